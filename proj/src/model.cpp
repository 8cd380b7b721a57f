#include "recsim/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "recsim/errors.hpp"

namespace recsim {

namespace {

int numerical_rank(const Eigen::MatrixXd& M, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rel_tol * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

}  // namespace

void ModelConfig::validate() const {
  std::ostringstream bad;
  if (n_users < 1) bad << "n_users must be positive; ";
  if (n_products < 1) bad << "n_products must be positive; ";
  if (p < 1 || q < 1) bad << "p and q must be positive; ";
  if (V.rows() != p || V.cols() != n_users)
    bad << "user_attrs must be " << n_users << " arrays of length " << p << "; ";
  if (W.rows() != q || W.cols() != n_products)
    bad << "product_attrs must be " << n_products << " arrays of length " << q << "; ";
  if (lambda.size() != n_users) {
    bad << "arrival_probs must have length " << n_users << "; ";
  } else {
    if (lambda.minCoeff() < 0.0) bad << "arrival_probs entries must be >= 0; ";
    if (std::abs(lambda.sum() - 1.0) > 1e-12) bad << "arrival_probs must sum to 1; ";
  }
  if (!(zeta > 0.0)) bad << "zeta must be > 0; ";
  if (!(a >= 0.0)) bad << "a must be >= 0; ";
  if (noise.type == NoiseType::kGaussian && !(noise.sigma >= 0.0))
    bad << "noise.sigma must be >= 0; ";
  if (n_users < p) bad << "n_users must be >= p (user attributes span R^p); ";
  if (n_products < q) bad << "n_products must be >= q (product attributes span R^q); ";
  if (bad.str().empty()) {
    if (numerical_rank(V, 1e-9) < p) bad << "user_attrs must have rank p; ";
    if (numerical_rank(W, 1e-9) < q) bad << "product_attrs must have rank q; ";
  }
  if (!bad.str().empty()) throw ConfigError("invalid config: " + bad.str());
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  const double m = logits.maxCoeff();
  Eigen::VectorXd e = (logits.array() - m).exp();
  return e / e.sum();
}

Eigen::VectorXd build_context(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  const Eigen::Index p = v.size(), q = w.size();
  if (p == 0 || q == 0) throw std::invalid_argument("build_context: empty attribute vector");
  Eigen::VectorXd c(p * q);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < q; ++j) c(i * q + j) = v(i) * w(j);
  return c;
}

Eigen::MatrixXd theta_matrix(const Eigen::VectorXd& theta, int p, int q) {
  if (theta.size() != static_cast<Eigen::Index>(p) * q)
    throw std::invalid_argument("theta_matrix: theta length does not equal p*q");
  Eigen::MatrixXd T(p, q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) T(i, j) = theta(static_cast<Eigen::Index>(i) * q + j);
  return T;
}

Eigen::VectorXd recommendation_probs(const Eigen::VectorXd& theta, int user,
                                     const ModelConfig& cfg) {
  if (user < 0 || user >= cfg.n_users)
    throw std::invalid_argument("recommendation_probs: user index out of range");
  if (theta.size() != cfg.learner_dim())
    throw std::invalid_argument("recommendation_probs: theta has wrong dimension");
  if (!theta.allFinite()) throw NumericError("recommendation_probs: non-finite theta");
  // logits_k = a * (v_n (x) w_k)' theta = a * (T' v_n)' w_k
  const Eigen::MatrixXd T = theta_matrix(theta, cfg.p, cfg.q);
  const Eigen::VectorXd g = T.transpose() * cfg.V.col(user);
  const Eigen::VectorXd logits = cfg.a * (cfg.W.transpose() * g);
  return softmax(logits);
}

Eigen::VectorXd full_prob_vector(const Eigen::VectorXd& theta, const ModelConfig& cfg) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(cfg.n_users) * cfg.n_products);
  for (int n = 0; n < cfg.n_users; ++n)
    p.segment(static_cast<Eigen::Index>(n) * cfg.n_products, cfg.n_products) =
        recommendation_probs(theta, n, cfg);
  return p;
}

Eigen::VectorXd theta_from(const Eigen::VectorXd& B, const Eigen::MatrixXd& S) {
  if (S.rows() != S.cols() || S.rows() != B.size())
    throw std::invalid_argument("theta_from: S and B dimensions do not match");
  Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw SingularMatrixError("theta_from: S is not positive definite");
  Eigen::VectorXd theta = ldlt.solve(B);
  const double tol = 1e-10 * (1.0 + B.norm());
  double res = (S * theta - B).norm();
  if (res > tol) {
    // one step of iterative refinement
    theta += ldlt.solve(B - S * theta);
    res = (S * theta - B).norm();
    if (res > tol)
      throw SingularMatrixError("theta_from: S is singular within tolerance (residual " +
                                std::to_string(res) + ")");
  }
  if (!theta.allFinite()) throw SingularMatrixError("theta_from: solve produced non-finite theta");
  return theta;
}

Eigen::VectorXd theta_from(const LearnerState& state) { return theta_from(state.B, state.S); }

double reward(const Eigen::VectorXd& w_k, const Eigen::VectorXd& y_n, double eta) {
  if (w_k.size() != y_n.size())
    throw std::invalid_argument("reward: attribute and state dimensions do not match");
  return w_k.dot(y_n) + eta;
}

double empirical_loss(const Eigen::VectorXd& theta, const std::vector<LossSample>& history,
                      double zeta) {
  double loss = zeta * theta.squaredNorm();
  for (const auto& s : history) {
    if (s.context.size() != theta.size())
      throw std::invalid_argument("empirical_loss: context dimension mismatch");
    const double r = s.reward - s.context.dot(theta);
    loss += r * r;
  }
  return loss;
}

MismatchReport mismatch_report(const ModelConfig& cfg, bool beta_all_zero) {
  MismatchReport rep;
  rep.stationary = beta_all_zero;
  rep.learnable = cfg.p >= cfg.n_users;
  rep.mismatch = !(rep.stationary && rep.learnable);
  return rep;
}

double max_asymmetry(const Eigen::MatrixXd& S) {
  return (S - S.transpose()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  return es.eigenvalues().minCoeff();
}

}  // namespace recsim

#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace recsim {

enum class NoiseType { kNone, kGaussian };

struct NoiseSpec {
  NoiseType type = NoiseType::kNone;
  double sigma = 0.0;
};

// Fixed parameters of one bandit instance. User attributes are the columns
// of V (p x N), product attributes the columns of W (q x K). User and
// product indices are 0-based throughout the API; serialized outputs number
// them 1..N and 1..K.
struct ModelConfig {
  int n_users = 0;     // N
  int n_products = 0;  // K
  int p = 0;           // user-attribute dimension
  int q = 0;           // product-attribute dimension
  Eigen::MatrixXd V;   // p x N
  Eigen::MatrixXd W;   // q x K
  Eigen::VectorXd lambda;  // arrival probabilities, length N
  double a = 0.0;          // exploration-exploitation scalar
  double zeta = 0.0;       // ridge regularizer
  NoiseSpec noise;
  std::uint64_t seed = 0;

  int learner_dim() const { return p * q; }
  int population_dim() const { return n_users * q; }

  Eigen::VectorXd user_attr(int n) const { return V.col(n); }
  Eigen::VectorXd product_attr(int k) const { return W.col(k); }

  // Throws ConfigError naming the offending key if any structural invariant
  // fails: arrival_probs nonnegative and summing to 1 within 1e-12,
  // rank(V) = p and rank(W) = q (singular values above 1e-9 * sigma_max),
  // zeta > 0, a >= 0, dimensions consistent.
  void validate() const;
};

// The recommendation system's belief state at discrete time t >= 1.
// B is length pq, S is pq x pq symmetric positive definite.
struct LearnerState {
  Eigen::VectorXd B;
  Eigen::MatrixXd S;
  long t = 1;
};

// Stacked user states Y = [Y_1; ...; Y_N], each Y_n in R^q.
struct PopulationState {
  Eigen::VectorXd Y;
  long t = 1;

  Eigen::VectorXd user_state(int n, int q) const { return Y.segment(static_cast<Eigen::Index>(n) * q, q); }
};

struct ContextVector {
  Eigen::VectorXd c;  // length pq, c = v (kron) w
};

struct MismatchReport {
  bool stationary = false;
  bool learnable = false;
  bool mismatch = true;  // = !(stationary && learnable)
};

}  // namespace recsim

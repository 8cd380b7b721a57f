#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "recsim/types.hpp"

namespace recsim {

// One observed (context, reward) pair of the least-squares history.
struct LossSample {
  Eigen::VectorXd context;
  double reward = 0.0;
};

// Overflow-safe softmax: subtracts the max logit before exponentiating.
Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

// Kronecker product v (x) w; element (i*q + j) = v[i] * w[j].
Eigen::VectorXd build_context(const Eigen::VectorXd& v, const Eigen::VectorXd& w);

// theta reshaped to a p x q matrix T with T(i, j) = theta(i*q + j), so that
// (v (x) w)' theta = v' T w.
Eigen::MatrixXd theta_matrix(const Eigen::VectorXd& theta, int p, int q);

// Softmax recommendation probabilities for user n (0-based):
// P(A = k) ~ exp(a * C_{n,k}' theta). Entries are positive and sum to 1.
Eigen::VectorXd recommendation_probs(const Eigen::VectorXd& theta, int user,
                                     const ModelConfig& cfg);

// Concatenation of recommendation_probs over users 0..N-1 (length N*K).
Eigen::VectorXd full_prob_vector(const Eigen::VectorXd& theta, const ModelConfig& cfg);

// Solves S theta = B with an SPD factorization (never an explicit inverse).
// Throws SingularMatrixError if S is singular or the solve cannot reach
// residual <= 1e-10 * (1 + |B|).
Eigen::VectorXd theta_from(const Eigen::VectorXd& B, const Eigen::MatrixXd& S);
Eigen::VectorXd theta_from(const LearnerState& state);

// Mean reward w_k' y_n plus a noise realization supplied by the caller.
double reward(const Eigen::VectorXd& w_k, const Eigen::VectorXd& y_n, double eta);

// zeta * |theta|^2 + sum_s (R_s - C_s' theta)^2 over the history.
double empirical_loss(const Eigen::VectorXd& theta, const std::vector<LossSample>& history,
                      double zeta);

// stationary := beta identically zero; learnable := p >= N (a surjection
// R^{pq} -> R^{Nq} exists iff pq >= Nq); mismatch := not both.
MismatchReport mismatch_report(const ModelConfig& cfg, bool beta_all_zero);

// max |S - S'| over entries; 0 for exactly symmetric S.
double max_asymmetry(const Eigen::MatrixXd& S);

// Smallest eigenvalue of the symmetric part of S.
double min_eigenvalue(const Eigen::MatrixXd& S);

}  // namespace recsim

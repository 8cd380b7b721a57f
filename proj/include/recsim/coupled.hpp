#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "recsim/rng.hpp"

namespace recsim {

// Generic coupled stochastic-approximation loop: a learner state phi and an
// environment state psi evolve together through signal/action/reward rounds,
//   phi <- phi + alpha(t) * Phi(U, A, R, phi)
//   psi <- psi + beta(t)  * Psi(U, A, R, psi).
// Signals and actions are integer-coded; plug in whatever semantics the
// concrete system needs.
struct CoupledSystem {
  Eigen::Index learner_dim = 0;
  Eigen::Index env_dim = 0;

  // Step 1: sample the signal U from the environment state.
  std::function<int(const Eigen::VectorXd& psi, Rng&)> signal_sampler;
  // Step 2: sample the action A = Q(U, phi).
  std::function<int(int u, const Eigen::VectorXd& phi, Rng&)> action_kernel;
  // Step 3: reward R = r(U, A, psi) + eta.
  std::function<double(int u, int a, const Eigen::VectorXd& psi, Rng&)> reward_fn;
  // Steps 4-5: deterministic update increments.
  std::function<Eigen::VectorXd(int u, int a, double r, const Eigen::VectorXd& phi)> phi_update;
  std::function<Eigen::VectorXd(int u, int a, double r, const Eigen::VectorXd& psi)> psi_update;

  // Step sequences; defaults satisfy sum alpha = inf, sum alpha^2 < inf,
  // alpha = beta (same-timescale coupling).
  std::function<double(long t)> alpha = [](long t) { return 1.0 / static_cast<double>(t + 1); };
  std::function<double(long t)> beta = [](long t) { return 1.0 / static_cast<double>(t + 1); };
};

struct SaRecord {
  int signal = -1;
  int action = -1;
  double reward = 0.0;
};

struct SaStepResult {
  Eigen::VectorXd phi;
  Eigen::VectorXd psi;
  SaRecord record;
};

struct SaTrajectory {
  std::vector<long> times;           // state indices, starting at the initial t
  std::vector<double> taus;          // harmonic_time(t) per record
  std::vector<Eigen::VectorXd> phi;
  std::vector<Eigen::VectorXd> psi;
  std::vector<double> rewards;       // reward of the step leading to each record (NaN for the first)
};

// tau(t) = sum_{s=0}^{t-1} 1/(s+1); tau(0) = 0. The ODE-time image of
// discrete step t under the default step sequence.
double harmonic_time(long t);

// One interaction round at time t; draws come from rng in the fixed order
// signal, action, reward. Throws NumericError naming the offending function
// if an update produces a non-finite value.
SaStepResult sa_step(const CoupledSystem& sys, const Eigen::VectorXd& phi,
                     const Eigen::VectorXd& psi, long t, Rng& rng);

// Runs T steps from (phi0, psi0) starting at t = 1, recording the initial
// state, every record_every-th step, and the final state. Step t uses the
// substream (seed, t); identical seeds give identical trajectories.
SaTrajectory run_sa(const CoupledSystem& sys, const Eigen::VectorXd& phi0,
                    const Eigen::VectorXd& psi0, long T, long record_every, std::uint64_t seed);

struct DriftEstimate {
  Eigen::VectorXd phi_drift;
  Eigen::VectorXd psi_drift;
  Eigen::VectorXd phi_std_err;  // per-coordinate standard error of the mean
  Eigen::VectorXd psi_std_err;
};

// Monte-Carlo estimate of E[Phi | phi, psi] and E[Psi | phi, psi] from M
// independent (U, A, R) samples at the fixed pair (phi, psi). Sample i uses
// the substream (seed, i), so estimates are reproducible and the samples
// could be partitioned across threads by index.
DriftEstimate estimate_mean_drift(const CoupledSystem& sys, const Eigen::VectorXd& phi,
                                  const Eigen::VectorXd& psi, long M, std::uint64_t seed);

// Writes columns t, tau, phi_0.., psi_0.., reward.
void write_csv(const SaTrajectory& traj, const std::string& path);

}  // namespace recsim

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "recsim/coupled.hpp"
#include "recsim/model.hpp"
#include "recsim/rng.hpp"
#include "recsim/types.hpp"

namespace recsim {

struct SimEvent {
  long t = 0;
  int user = -1;     // 0-based
  int product = -1;  // 0-based
  double reward = 0.0;
};

struct SimOptions {
  long record_every = 1000;
  bool record_events = false;
  // Optional step-size overrides for exploratory runs; null means the
  // default 1/(t+1). A zero beta freezes the population (stationary
  // environment).
  std::function<double(long)> alpha;
  std::function<double(long)> beta;
};

struct BanditTrajectory {
  int n_users = 0;
  int q = 0;
  std::vector<long> times;
  std::vector<double> taus;  // harmonic_time(t)
  std::vector<LearnerState> learner;
  std::vector<PopulationState> population;
  std::vector<Eigen::VectorXd> theta;
  std::vector<double> loss;  // empirical loss of theta_t over the history so far
  std::vector<SimEvent> events;  // per step when record_events is set
};

// One interaction round at discrete time t = learner.t = pop.t >= 1:
// samples U_t from the arrival probabilities, A_t from the softmax policy at
// theta_t = S_t^{-1} B_t, computes R_t, and applies the 1/(t+1) recursions.
// Only user U_t's state block changes. Draw order per step: one uniform for
// U_t, one for A_t, then two for the reward noise when it is gaussian.
std::tuple<LearnerState, PopulationState, SimEvent> simulate_step(const ModelConfig& cfg,
                                                                  const LearnerState& learner,
                                                                  const PopulationState& pop,
                                                                  Rng& rng);

// Runs T steps from pop0 with the fresh-start learner B_1 = 0, S_1 = zeta*I
// at t = 1 (first update factor 1/2, so every S_t is a strict convex
// combination that includes zeta*I and stays positive definite). Step t uses
// the substream (seed, t). Records the initial state, every
// record_every-th step, and the final one; each record carries theta_t and
// the empirical loss at theta_t.
BanditTrajectory run_simulation(const ModelConfig& cfg, const PopulationState& pop0, long T,
                                const SimOptions& opts, std::uint64_t seed);

// Per-record average loss L_t(theta_t) / t; asymptotic tracking corresponds
// to this sequence approaching zero.
std::vector<double> tracking_gap(const BanditTrajectory& traj);

// The same model packaged as a generic coupled system: phi = [B; vec(S)]
// (column-major), psi = Y. Runs of this system reproduce run_simulation
// bit-for-bit under the same seed.
CoupledSystem make_bandit_system(const ModelConfig& cfg);

Eigen::VectorXd pack_phi(const LearnerState& s);
LearnerState unpack_phi(const Eigen::VectorXd& phi, int pq, long t);

// Fresh learner state at t = 1.
LearnerState initial_learner(const ModelConfig& cfg);

// Columns: t, tau, loss, theta_0.., then y_n_j stacked by user (1-based
// user and component numbers in the header).
void write_csv(const BanditTrajectory& traj, const std::string& path);

// Final states plus the tracking-gap series.
void write_summary_json(const BanditTrajectory& traj, const std::string& path);

}  // namespace recsim

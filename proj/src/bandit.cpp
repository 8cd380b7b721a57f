#include "recsim/bandit.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "recsim/csv.hpp"
#include "recsim/errors.hpp"

namespace recsim {

namespace {

int sample_user(const ModelConfig& cfg, Rng& rng) { return rng.next_categorical(cfg.lambda); }

int sample_product(const ModelConfig& cfg, const Eigen::VectorXd& theta, int user, Rng& rng) {
  return rng.next_categorical(recommendation_probs(theta, user, cfg));
}

double sample_reward(const ModelConfig& cfg, int user, int product, const Eigen::VectorXd& Y,
                     Rng& rng) {
  double eta = 0.0;
  if (cfg.noise.type == NoiseType::kGaussian) eta = cfg.noise.sigma * rng.next_gaussian();
  return reward(cfg.W.col(product), Y.segment(static_cast<Eigen::Index>(user) * cfg.q, cfg.q),
                eta);
}

// Shared by simulate_step and run_simulation so both paths are bit-identical.
SimEvent step_in_place(const ModelConfig& cfg, LearnerState& learner, PopulationState& pop,
                       Rng& rng, double alpha_t, double beta_t) {
  const Eigen::VectorXd theta = theta_from(learner);
  SimEvent ev;
  ev.t = learner.t;
  ev.user = sample_user(cfg, rng);
  ev.product = sample_product(cfg, theta, ev.user, rng);
  ev.reward = sample_reward(cfg, ev.user, ev.product, pop.Y, rng);

  const Eigen::VectorXd C = build_context(cfg.V.col(ev.user), cfg.W.col(ev.product));
  const Eigen::VectorXd b_inc = C * ev.reward - learner.B;
  const Eigen::MatrixXd s_inc = C * C.transpose() - learner.S;
  learner.B += alpha_t * b_inc;
  learner.S += alpha_t * s_inc;

  auto y_block = pop.Y.segment(static_cast<Eigen::Index>(ev.user) * cfg.q, cfg.q);
  const Eigen::VectorXd y_inc = cfg.W.col(ev.product) - y_block;
  y_block += beta_t * y_inc;

  ++learner.t;
  ++pop.t;
  return ev;
}

double default_step(long t) { return 1.0 / static_cast<double>(t + 1); }

}  // namespace

std::tuple<LearnerState, PopulationState, SimEvent> simulate_step(const ModelConfig& cfg,
                                                                  const LearnerState& learner,
                                                                  const PopulationState& pop,
                                                                  Rng& rng) {
  if (learner.t != pop.t || learner.t < 1)
    throw std::invalid_argument("simulate_step: learner and population must share a time t >= 1");
  LearnerState L = learner;
  PopulationState P = pop;
  const double step = default_step(learner.t);
  SimEvent ev = step_in_place(cfg, L, P, rng, step, step);
  return {std::move(L), std::move(P), ev};
}

LearnerState initial_learner(const ModelConfig& cfg) {
  LearnerState s;
  s.B = Eigen::VectorXd::Zero(cfg.learner_dim());
  s.S = cfg.zeta * Eigen::MatrixXd::Identity(cfg.learner_dim(), cfg.learner_dim());
  s.t = 1;
  return s;
}

BanditTrajectory run_simulation(const ModelConfig& cfg, const PopulationState& pop0, long T,
                                const SimOptions& opts, std::uint64_t seed) {
  if (T < 1) throw std::invalid_argument("run_simulation: T must be >= 1");
  if (opts.record_every < 1) throw std::invalid_argument("run_simulation: record_every must be >= 1");
  if (pop0.Y.size() != cfg.population_dim())
    throw std::invalid_argument("run_simulation: pop0 has wrong dimension");
  if (!pop0.Y.allFinite()) throw NumericError("run_simulation: pop0 is not finite");

  LearnerState learner = initial_learner(cfg);
  PopulationState pop = pop0;
  pop.t = 1;

  // Running history sums; the recorded loss
  //   L(theta) = zeta |theta|^2 + sum R^2 - 2 theta'(sum C R) + theta'(sum C C')theta
  // equals empirical_loss over the full history without storing it.
  double sum_r2 = 0.0;
  Eigen::VectorXd sum_cr = Eigen::VectorXd::Zero(cfg.learner_dim());
  Eigen::MatrixXd sum_cc = Eigen::MatrixXd::Zero(cfg.learner_dim(), cfg.learner_dim());

  BanditTrajectory traj;
  traj.n_users = cfg.n_users;
  traj.q = cfg.q;

  auto record = [&](double tau) {
    const Eigen::VectorXd theta = theta_from(learner);
    const double loss = cfg.zeta * theta.squaredNorm() + sum_r2 - 2.0 * theta.dot(sum_cr) +
                        theta.dot(sum_cc * theta);
    traj.times.push_back(learner.t);
    traj.taus.push_back(tau);
    traj.learner.push_back(learner);
    traj.population.push_back(pop);
    traj.theta.push_back(theta);
    traj.loss.push_back(loss);
  };

  double tau = 1.0;  // harmonic_time(1)
  record(tau);

  for (long step = 1; step <= T; ++step) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(step), Rng::Domain::kStep);
    const double alpha_t = opts.alpha ? opts.alpha(step) : default_step(step);
    const double beta_t = opts.beta ? opts.beta(step) : default_step(step);
    SimEvent ev = step_in_place(cfg, learner, pop, rng, alpha_t, beta_t);
    if (opts.record_events) traj.events.push_back(ev);

    const Eigen::VectorXd C = build_context(cfg.V.col(ev.user), cfg.W.col(ev.product));
    sum_r2 += ev.reward * ev.reward;
    sum_cr += C * ev.reward;
    sum_cc += C * C.transpose();

    tau += 1.0 / static_cast<double>(step + 1);
    if (step % opts.record_every == 0 || step == T) record(tau);
  }
  return traj;
}

std::vector<double> tracking_gap(const BanditTrajectory& traj) {
  if (traj.loss.empty()) throw std::invalid_argument("tracking_gap: trajectory has no loss records");
  std::vector<double> gap(traj.loss.size());
  for (std::size_t i = 0; i < gap.size(); ++i)
    gap[i] = traj.loss[i] / static_cast<double>(traj.times[i]);
  return gap;
}

CoupledSystem make_bandit_system(const ModelConfig& cfg) {
  const Eigen::Index pq = cfg.learner_dim();
  CoupledSystem sys;
  sys.learner_dim = pq + pq * pq;
  sys.env_dim = cfg.population_dim();

  sys.signal_sampler = [cfg](const Eigen::VectorXd&, Rng& rng) { return sample_user(cfg, rng); };

  sys.action_kernel = [cfg, pq](int u, const Eigen::VectorXd& phi, Rng& rng) {
    const Eigen::VectorXd B = phi.head(pq);
    const Eigen::Map<const Eigen::MatrixXd> S(phi.data() + pq, pq, pq);
    const Eigen::VectorXd theta = theta_from(B, S);
    return sample_product(cfg, theta, u, rng);
  };

  sys.reward_fn = [cfg](int u, int a, const Eigen::VectorXd& psi, Rng& rng) {
    return sample_reward(cfg, u, a, psi, rng);
  };

  sys.phi_update = [cfg, pq](int u, int a, double r, const Eigen::VectorXd& phi) {
    const Eigen::VectorXd C = build_context(cfg.V.col(u), cfg.W.col(a));
    Eigen::VectorXd inc(pq + pq * pq);
    inc.head(pq) = C * r - phi.head(pq);
    const Eigen::Map<const Eigen::MatrixXd> S(phi.data() + pq, pq, pq);
    Eigen::Map<Eigen::MatrixXd>(inc.data() + pq, pq, pq) = C * C.transpose() - S;
    return inc;
  };

  sys.psi_update = [cfg](int u, int a, double, const Eigen::VectorXd& psi) {
    Eigen::VectorXd inc = Eigen::VectorXd::Zero(psi.size());
    const Eigen::Index off = static_cast<Eigen::Index>(u) * cfg.q;
    inc.segment(off, cfg.q) = cfg.W.col(a) - psi.segment(off, cfg.q);
    return inc;
  };

  return sys;
}

Eigen::VectorXd pack_phi(const LearnerState& s) {
  const Eigen::Index pq = s.B.size();
  Eigen::VectorXd phi(pq + pq * pq);
  phi.head(pq) = s.B;
  Eigen::Map<Eigen::MatrixXd>(phi.data() + pq, pq, pq) = s.S;
  return phi;
}

LearnerState unpack_phi(const Eigen::VectorXd& phi, int pq, long t) {
  LearnerState s;
  s.B = phi.head(pq);
  s.S = Eigen::Map<const Eigen::MatrixXd>(phi.data() + pq, pq, pq);
  s.t = t;
  return s;
}

void write_csv(const BanditTrajectory& traj, const std::string& path) {
  CsvWriter csv(path);
  std::vector<std::string> header = {"t", "tau", "loss"};
  const Eigen::Index pq = traj.theta.empty() ? 0 : traj.theta.front().size();
  for (Eigen::Index i = 0; i < pq; ++i) header.push_back("theta_" + std::to_string(i));
  for (int n = 1; n <= traj.n_users; ++n)
    for (int j = 1; j <= traj.q; ++j)
      header.push_back("y_" + std::to_string(n) + "_" + std::to_string(j));
  csv.header(header);
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    csv.begin_row();
    csv.field(traj.times[r]);
    csv.field(traj.taus[r]);
    csv.field(traj.loss[r]);
    for (Eigen::Index i = 0; i < pq; ++i) csv.field(traj.theta[r](i));
    const Eigen::VectorXd& Y = traj.population[r].Y;
    for (Eigen::Index i = 0; i < Y.size(); ++i) csv.field(Y(i));
    csv.end_row();
  }
}

void write_summary_json(const BanditTrajectory& traj, const std::string& path) {
  nlohmann::json j;
  if (!traj.times.empty()) {
    const std::size_t last = traj.times.size() - 1;
    j["final"]["t"] = traj.times[last];
    j["final"]["tau"] = traj.taus[last];
    j["final"]["loss"] = traj.loss[last];
    j["final"]["theta"] = std::vector<double>(traj.theta[last].data(),
                                              traj.theta[last].data() + traj.theta[last].size());
    nlohmann::json users = nlohmann::json::array();
    for (int n = 0; n < traj.n_users; ++n) {
      const Eigen::VectorXd y = traj.population[last].user_state(n, traj.q);
      users.push_back(std::vector<double>(y.data(), y.data() + y.size()));
    }
    j["final"]["y"] = users;
  }
  j["tracking_gap"] = tracking_gap(traj);
  j["times"] = traj.times;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace recsim

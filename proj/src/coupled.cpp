#include "recsim/coupled.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "recsim/csv.hpp"
#include "recsim/errors.hpp"

namespace recsim {

double harmonic_time(long t) {
  double tau = 0.0;
  for (long s = 0; s < t; ++s) tau += 1.0 / static_cast<double>(s + 1);
  return tau;
}

SaStepResult sa_step(const CoupledSystem& sys, const Eigen::VectorXd& phi,
                     const Eigen::VectorXd& psi, long t, Rng& rng) {
  if (t < 0) throw std::invalid_argument("sa_step: t must be >= 0");
  SaStepResult out;
  out.record.signal = sys.signal_sampler(psi, rng);
  out.record.action = sys.action_kernel(out.record.signal, phi, rng);
  out.record.reward = sys.reward_fn(out.record.signal, out.record.action, psi, rng);
  if (!std::isfinite(out.record.reward))
    throw NumericError("sa_step: reward_fn produced a non-finite value at t=" + std::to_string(t));

  const Eigen::VectorXd phi_inc =
      sys.phi_update(out.record.signal, out.record.action, out.record.reward, phi);
  if (!phi_inc.allFinite())
    throw NumericError("sa_step: phi_update produced a non-finite value at t=" + std::to_string(t));
  const Eigen::VectorXd psi_inc =
      sys.psi_update(out.record.signal, out.record.action, out.record.reward, psi);
  if (!psi_inc.allFinite())
    throw NumericError("sa_step: psi_update produced a non-finite value at t=" + std::to_string(t));

  out.phi = phi + sys.alpha(t) * phi_inc;
  out.psi = psi + sys.beta(t) * psi_inc;
  return out;
}

SaTrajectory run_sa(const CoupledSystem& sys, const Eigen::VectorXd& phi0,
                    const Eigen::VectorXd& psi0, long T, long record_every, std::uint64_t seed) {
  if (T < 1) throw std::invalid_argument("run_sa: T must be >= 1");
  if (record_every < 1) throw std::invalid_argument("run_sa: record_every must be >= 1");

  SaTrajectory traj;
  Eigen::VectorXd phi = phi0, psi = psi0;
  double tau = 1.0;  // harmonic_time(1)

  traj.times.push_back(1);
  traj.taus.push_back(tau);
  traj.phi.push_back(phi);
  traj.psi.push_back(psi);
  traj.rewards.push_back(std::numeric_limits<double>::quiet_NaN());

  for (long step = 1; step <= T; ++step) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(step), Rng::Domain::kStep);
    SaStepResult res = sa_step(sys, phi, psi, step, rng);
    phi = std::move(res.phi);
    psi = std::move(res.psi);
    tau += 1.0 / static_cast<double>(step + 1);
    if (step % record_every == 0 || step == T) {
      traj.times.push_back(step + 1);
      traj.taus.push_back(tau);
      traj.phi.push_back(phi);
      traj.psi.push_back(psi);
      traj.rewards.push_back(res.record.reward);
    }
  }
  return traj;
}

DriftEstimate estimate_mean_drift(const CoupledSystem& sys, const Eigen::VectorXd& phi,
                                  const Eigen::VectorXd& psi, long M, std::uint64_t seed) {
  if (M < 1) throw std::invalid_argument("estimate_mean_drift: M must be >= 1");
  Eigen::VectorXd phi_sum = Eigen::VectorXd::Zero(sys.learner_dim);
  Eigen::VectorXd phi_sq = Eigen::VectorXd::Zero(sys.learner_dim);
  Eigen::VectorXd psi_sum = Eigen::VectorXd::Zero(sys.env_dim);
  Eigen::VectorXd psi_sq = Eigen::VectorXd::Zero(sys.env_dim);

  for (long i = 0; i < M; ++i) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(i), Rng::Domain::kDrift);
    const int u = sys.signal_sampler(psi, rng);
    const int a = sys.action_kernel(u, phi, rng);
    const double r = sys.reward_fn(u, a, psi, rng);
    const Eigen::VectorXd dphi = sys.phi_update(u, a, r, phi);
    const Eigen::VectorXd dpsi = sys.psi_update(u, a, r, psi);
    phi_sum += dphi;
    phi_sq += dphi.cwiseProduct(dphi);
    psi_sum += dpsi;
    psi_sq += dpsi.cwiseProduct(dpsi);
  }

  const double m = static_cast<double>(M);
  DriftEstimate est;
  est.phi_drift = phi_sum / m;
  est.psi_drift = psi_sum / m;
  auto std_err = [m](const Eigen::VectorXd& sum, const Eigen::VectorXd& sq) {
    if (m < 2) return Eigen::VectorXd(Eigen::VectorXd::Zero(sum.size()));
    Eigen::VectorXd var = (sq - sum.cwiseProduct(sum) / m) / (m - 1.0);
    return Eigen::VectorXd((var.cwiseMax(0.0) / m).cwiseSqrt());
  };
  est.phi_std_err = std_err(phi_sum, phi_sq);
  est.psi_std_err = std_err(psi_sum, psi_sq);
  return est;
}

void write_csv(const SaTrajectory& traj, const std::string& path) {
  CsvWriter csv(path);
  std::vector<std::string> header = {"t", "tau"};
  const Eigen::Index ld = traj.phi.empty() ? 0 : traj.phi.front().size();
  const Eigen::Index ed = traj.psi.empty() ? 0 : traj.psi.front().size();
  for (Eigen::Index i = 0; i < ld; ++i) header.push_back("phi_" + std::to_string(i));
  for (Eigen::Index i = 0; i < ed; ++i) header.push_back("psi_" + std::to_string(i));
  header.push_back("reward");
  csv.header(header);
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    csv.begin_row();
    csv.field(traj.times[r]);
    csv.field(traj.taus[r]);
    for (Eigen::Index i = 0; i < ld; ++i) csv.field(traj.phi[r](i));
    for (Eigen::Index i = 0; i < ed; ++i) csv.field(traj.psi[r](i));
    if (std::isnan(traj.rewards[r]))
      csv.field("");
    else
      csv.field(traj.rewards[r]);
    csv.end_row();
  }
}

}  // namespace recsim

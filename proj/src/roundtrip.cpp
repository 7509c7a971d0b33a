#include "casimir/roundtrip.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/translation.hpp"

namespace casimir {

const char* to_string(Channel channel) {
  switch (channel) {
    case Channel::Dirichlet:
      return "dirichlet";
    case Channel::Neumann:
      return "neumann";
    default:
      return "em";
  }
}

Channel channel_from_string(const std::string& name) {
  if (name == "em" || name == "full") return Channel::Full;
  if (name == "dirichlet" || name == "D") return Channel::Dirichlet;
  if (name == "neumann" || name == "N") return Channel::Neumann;
  throw std::invalid_argument("unknown channel '" + name + "'");
}

namespace roundtrip {

namespace {

const double kLogNorm = std::log(2 * std::sqrt(2 * std::numbers::pi));

std::vector<BoundaryMode> scalar_modes(Channel channel) {
  switch (channel) {
    case Channel::Dirichlet:
      return {BoundaryMode::Dirichlet};
    case Channel::Neumann:
      return {BoundaryMode::Neumann};
    default:
      return {BoundaryMode::Dirichlet, BoundaryMode::Neumann};
  }
}

// Indices of the rows belonging to each scalar channel.
std::vector<std::vector<int>> blocks(const std::vector<Mode>& modes) {
  std::vector<std::vector<int>> out(2);
  for (int i = 0; i < static_cast<int>(modes.size()); ++i)
    out[modes[i].mode == BoundaryMode::Dirichlet ? 0 : 1].push_back(i);
  return out;
}

Eigen::MatrixXd select(const Eigen::MatrixXd& m, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

}  // namespace

TruncatedKernel TruncatedKernel::truncated(int nu) const {
  if (nu > nu_max || nu < 0) throw DomainError("truncated: nu outside [0, nu_max]");
  std::vector<int> keep;
  TruncatedKernel out;
  out.nu_max = nu;
  out.q_scaled = q_scaled;
  out.channel = channel;
  for (int i = 0; i < static_cast<int>(modes.size()); ++i) {
    if (modes[i].n <= nu) {
      keep.push_back(i);
      out.modes.push_back(modes[i]);
    }
  }
  out.entries = select(entries, keep);
  return out;
}

Eigen::MatrixXd TruncatedKernel::block(BoundaryMode mode) const {
  return select(entries, blocks(modes)[mode == BoundaryMode::Dirichlet ? 0 : 1]);
}

std::vector<Mode> channel_modes(const Geometry& geom, int nu_max, Channel channel) {
  if (nu_max < 0) throw DomainError("nu_max must be >= 0");
  std::vector<Mode> modes;
  for (BoundaryMode bm : scalar_modes(channel)) {
    for (int n = 0; n <= nu_max; ++n) {
      if (geom.knife_edge() && !scattering::active_at_knife_edge(n, bm)) continue;
      modes.push_back({n, bm});
    }
  }
  return modes;
}

TruncatedKernel build_kernel(const Geometry& geom, double q, int nu_max, Channel channel) {
  if (!(q > 0) || !std::isfinite(q)) throw DomainError("build_kernel: q must be positive");
  TruncatedKernel k;
  k.nu_max = nu_max;
  k.q_scaled = q * geom.separation;
  k.channel = channel;
  k.modes = channel_modes(geom, nu_max, channel);
  const int size = static_cast<int>(k.modes.size());
  k.entries = Eigen::MatrixXd::Zero(size, size);
  if (size == 0) return k;

  const double d = geom.focus_distance();
  const double mu0 = geom.mu0() * std::sqrt(2 * q);
  std::vector<std::vector<SignedLogd>> reduced(2);
  for (BoundaryMode bm : scalar_modes(channel))
    reduced[bm == BoundaryMode::Dirichlet ? 0 : 1] = scattering::reduced_amplitudes(nu_max, bm, mu0);

  // log|amplitude factor| and sign per row
  std::vector<double> half_log(size);
  std::vector<double> sign(size);
  for (int i = 0; i < size; ++i) {
    const Mode& m = k.modes[i];
    const SignedLogd& f = reduced[m.mode == BoundaryMode::Dirichlet ? 0 : 1][m.n];
    half_log[i] = f.is_zero() ? -std::numeric_limits<double>::infinity() : 0.5 * f.logmag();
    sign[i] = scattering::plane_amplitude(m.mode) * f.sign();
  }

  if (geom.theta == 0.0) {
    const auto series = translation::theta0_series(nu_max, q, d);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        const Mode &a = k.modes[i], &b = k.modes[j];
        if (a.mode != b.mode || (a.n + b.n) % 2 != 0 || sign[i] == 0) continue;
        const SignedLogd& jv = series[(a.n + b.n) / 2];
        if (jv.is_zero()) continue;
        k.entries(i, j) = sign[i] * jv.sign() * std::exp(half_log[i] + half_log[j] + jv.logmag() - kLogNorm);
      }
    }
  } else {
    const auto block = translation::tilted_block(nu_max, q, d, geom.theta);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        const Mode &a = k.modes[i], &b = k.modes[j];
        const double jv = block.scaled(a.n, b.n);
        if (a.mode != b.mode || sign[i] == 0 || jv == 0) continue;
        k.entries(i, j) = sign[i] * jv * std::exp(half_log[i] + half_log[j] + block.log_scale - kLogNorm);
      }
    }
  }
  return k;
}

double logdet_one_minus(const Eigen::MatrixXd& n, double q) {
  if (n.rows() != n.cols()) throw DomainError("logdet_one_minus: kernel must be square");
  if (n.rows() == 0) return 0.0;
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n.rows(), n.cols()) - n;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::MatrixXd& u = lu.matrixLU();
  double log_abs = 0;
  int sign = lu.permutationP().determinant();
  for (int i = 0; i < u.rows(); ++i) {
    const double p = u(i, i);
    if (!(p != 0) || !std::isfinite(p)) throw PhysicalRegimeError("det(1 - N) vanished or is not finite", q);
    if (p < 0) sign = -sign;
    log_abs += std::log(std::abs(p));
  }
  if (sign <= 0) throw PhysicalRegimeError("det(1 - N) <= 0: spectral radius of N reached 1", q);
  return log_abs;
}

double logdet_one_minus(const TruncatedKernel& kernel) {
  const double q = kernel.q_scaled;
  double total = 0;
  for (const auto& idx : blocks(kernel.modes)) {
    if (idx.empty()) continue;
    total += logdet_one_minus(select(kernel.entries, idx), q);
  }
  return total;
}

}  // namespace roundtrip
}  // namespace casimir

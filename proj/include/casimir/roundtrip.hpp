#pragma once

// The truncated round-trip operator N(q) and log det(1 - N).
//
// Entries are kept in the symmetric gauge
//
//   N_{n n2} = F^P sign(F_n) sqrt(|f_n f_n2|) J_{n n2} / (2 sqrt(2 pi)),   f_n = F_n / n!
//
// which is a diagonal similarity transform of the raw kernel, so the
// determinant is unchanged while the factorial growth of F_n cancels
// against the decay of J.  At R = 0, theta = 0 this is (-1)^n k_{-n-n2-1}(2qH).

#include <Eigen/Core>

#include <string>
#include <vector>

#include "casimir/scattering.hpp"

namespace casimir {

enum class Channel { Full, Dirichlet, Neumann };

const char* to_string(Channel channel);
Channel channel_from_string(const std::string& name);

namespace roundtrip {

/// One row of the kernel: partial wave n in scalar channel `mode`.
struct Mode {
  int n = 0;
  BoundaryMode mode = BoundaryMode::Dirichlet;
};

struct TruncatedKernel {
  int nu_max = 0;
  Eigen::MatrixXd entries;
  double q_scaled = 0;  ///< q H
  Channel channel = Channel::Full;
  std::vector<Mode> modes;

  /// The kernel for a smaller nu_max: rows and columns with n <= nu.
  TruncatedKernel truncated(int nu) const;

  /// The rows and columns of one scalar channel (possibly empty).
  Eigen::MatrixXd block(BoundaryMode mode) const;
};

/// Rows carried by a channel.  At R = 0 only the modes with non-vanishing
/// amplitude are kept: even n for Dirichlet and odd n for Neumann.  For
/// R > 0 every n appears once per scalar channel.
std::vector<Mode> channel_modes(const Geometry& geom, int nu_max, Channel channel);

/// Symmetric-gauge kernel at Euclidean wavenumber q.  The two scalar
/// channels do not couple, so for Channel::Full the matrix is block diagonal
/// in the mode order returned by channel_modes().
TruncatedKernel build_kernel(const Geometry& geom, double q, int nu_max, Channel channel = Channel::Full);

/// log det(1 - N) by partial-pivot LU of each scalar-channel block.
/// Throws PhysicalRegimeError when det(1 - N) <= 0.
double logdet_one_minus(const TruncatedKernel& kernel);

/// Same on a bare matrix; `q` is only reported in the error.
double logdet_one_minus(const Eigen::MatrixXd& n, double q = 0.0);

}  // namespace roundtrip
}  // namespace casimir

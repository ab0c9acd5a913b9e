#ifndef ROSENBLATT_RIESZ_HPP
#define ROSENBLATT_RIESZ_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>

#include "rosenblatt/domain.hpp"

namespace rosenblatt {

/// Numeric failure surfaced to callers (eigensolver breakdown, embedding
/// clip beyond tolerance, ...). CLI maps this to exit code 4.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DiagonalRule { cell_average_exact_1d, cell_average_subsampled };

/// Discretization of K_alpha f(x) = int_D ||x-y||^{-alpha} f(y) dy.
/// Operator-level use admits 0 < alpha < d; S_infty-level callers must keep
/// alpha < d/2 (checked there, not here).
struct RieszConfig {
  Domain domain;
  double alpha;
  int resolution;
  DiagonalRule diagonal_rule;

  RieszConfig(Domain D, double a, int res);
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // > 0, non-increasing
  int n_reliable;               // leading indices trusted at this resolution
  double alpha;
  int dim;
  double domain_measure;
  std::string domain_desc;
  int resolution;
  std::size_t node_count;
};

/// Symmetric Nystrom matrix: A(i,j) = sqrt(w_i w_j) kbar(i,j) with the kernel
/// cell-averaged on and next to the diagonal (exact antiderivative in d=1,
/// tent-weighted quadrature in d=2).
Eigen::MatrixXd nystrom_matrix(const RieszConfig& config);

/// Top-k eigenvalues, non-increasing. Dense solver for moderate node counts;
/// interval/box grids above that use symmetry-sector Lanczos with FFT
/// block-Toeplitz matvecs (the kernel is translation invariant and the
/// weights uniform there).
Spectrum eigenvalues(const RieszConfig& config, int k);

/// c~(d, alpha) from the eigenvalue asymptotics
/// lambda_k ~ c~(d,alpha) |D|^{(d-alpha)/d} k^{-(d-alpha)/d}.
double weyl_constant(int d, double alpha);

struct TraceSquared {
  double value;
  double stderr_mc;   // 0 when closed form
  bool closed_form;
};

/// Tr(K_alpha^2) = int_D int_D ||x-y||^{-2 alpha} dx dy. Closed form for
/// intervals and (via the scaling law) centered balls; Monte Carlo with
/// reported standard error otherwise. Requires 0 < alpha < d/2.
TraceSquared trace_squared(const Domain& D, double alpha,
                           std::size_t n_mc = 10'000'000,
                           std::uint64_t seed = 0x5eed0ULL, int workers = 1);

/// k smallest Dirichlet-Laplacian eigenvalues of the box with side lengths l:
/// sum_i pi^2 k_i^2 / l_i^2 over multi-indices k_i >= 1, ascending.
Eigen::VectorXd dirichlet_box_eigs(const Eigen::VectorXd& l, int k);

/// Closed-form 1-d double integral int_0^h int_0^h |x-y|^{-a} dx dy.
inline double cell_pair_integral_1d(double h, double a) {
  return 2.0 * std::pow(h, 2.0 - a) / ((1.0 - a) * (2.0 - a));
}

}  // namespace rosenblatt

#endif

#ifndef ROSENBLATT_DISTRIBUTION_HPP
#define ROSENBLATT_DISTRIBUTION_HPP

#include <Eigen/Core>
#include <complex>
#include <cstdint>

#include "rosenblatt/domain.hpp"
#include "rosenblatt/riesz.hpp"

namespace rosenblatt {

/// Complete description of the limit variable S_inf on (D, alpha):
/// S_inf = sum_k lambda_k (eps_k^2 - 1) with lambda_k the eigenvalues of
/// K_alpha on D, truncated at K terms with a Gaussian tail compensation that
/// matches the lost variance exactly.
struct RosenblattSpec {
  int d;
  double alpha;              // 0 < alpha < d/2
  std::string domain_desc;
  double domain_measure;
  Eigen::VectorXd lambdas;   // positive, non-increasing
  double tail_var;           // trace_squared - sum lambda^2, >= 0
  double trace_sq;           // Tr(K_alpha^2) used for tail_var
  double weyl_coef;          // c~(d,alpha) |D|^{(d-alpha)/d}

  double kappa2() const { return 2.0 * (lambdas.squaredNorm() + tail_var); }
  /// Third-cumulant mass dropped by truncation, 8 sum_{k>K} lambda_k^3 by the
  /// Weyl tail; small at sane truncations.
  double third_moment_tail() const;
};

/// Builds the spec from a Nystrom spectrum: top-K eigenvalues (K <= n_reliable)
/// and tail variance from trace_squared. Requires 0 < alpha < d/2.
RosenblattSpec build_spec(const Domain& D, double alpha, int resolution, int K);

/// Assembles a spec from an explicit eigenvalue list (tail_var >= 0); used for
/// toy spectra in tests and for deserialization.
RosenblattSpec make_spec_from_lambdas(Eigen::VectorXd lambdas, double tail_var,
                                      int d = 1, double alpha = 0.25);

/// psi(z) = prod_k e^{-iz l_k} (1 - 2iz l_k)^{-1/2} * exp(-z^2 tail_var).
std::complex<double> char_fn(const RosenblattSpec& spec, double z);

/// kappa_1 = 0 and kappa_m = 2^{m-1} (m-1)! c_m for m >= 2, with c_m the
/// spectral power sum plus Weyl tail (exact tail_var for m = 2).
Eigen::VectorXd cumulants(const RosenblattSpec& spec, int m_max);

/// n draws of sum_k lambda_k (eps_k^2 - 1) + N(0, 2 tail_var).
Eigen::VectorXd sample(const RosenblattSpec& spec, std::size_t n,
                       std::uint64_t seed, int workers = 1);

/// Fourier inversion of char_fn. Precomputes the quadrature for an x-range;
/// density and cdf evaluations then cost one pass over the z-grid.
class Inversion {
 public:
  Inversion(const RosenblattSpec& spec, double x_lo, double x_hi);

  double density(double x) const;
  double cdf(double x) const;

  double z_cutoff() const { return z_cut_; }
  double z_step() const { return hz_; }

 private:
  Eigen::VectorXd zs_;
  Eigen::VectorXcd psi_;
  double hz_, z_cut_;
};

/// Density on a sorted grid (non-negative, clamped at the -1e-9 floor).
/// Requires at least 8 eigenvalues for absolutely convergent inversion.
Eigen::VectorXd density(const RosenblattSpec& spec, const Eigen::VectorXd& x_grid);

/// P[S_inf <= x] by Gil-Pelaez inversion; monotone clamped to [0, 1].
double cdf(const RosenblattSpec& spec, double x);

}  // namespace rosenblatt

#endif

#ifndef ROSENBLATT_FIELD_HPP
#define ROSENBLATT_FIELD_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "rosenblatt/distribution.hpp"
#include "rosenblatt/domain.hpp"

namespace rosenblatt {

/// Long-range-dependent Gaussian field with covariance
/// B(r) = (1 + r^beta)^{-gamma}, so alpha = beta*gamma and
/// L(r) = r^{beta gamma} / (1 + r^beta)^{gamma} is the slowly varying part.
struct FieldConfig {
  int d;                 // 1 or 2
  double beta;           // (0, 2]
  double gamma_exp;      // > 0; alpha = beta*gamma_exp in (0, d/2)
  double T;              // homothety scale
  double grid_step;      // lattice spacing, <= diam(D(T))/64
  Domain domain;         // Interval, Box or Ball with 0 in the closure

  FieldConfig(int dim, double b, double g, double scale, double h, Domain D);
  double alpha() const { return beta * gamma_exp; }
};

double covariance(const FieldConfig& config, double r);
double slowly_varying_L(double beta, double gamma_exp, double r);
/// d_T = T^{d-alpha} L(T).
double normalizer_d_T(const FieldConfig& config);

/// Stationary Gaussian lattice sample over the bounding box of D(T), exact
/// covariance at lattice lags via circulant embedding. `inside` marks lattice
/// cells whose midpoint lies in D(T).
struct FieldRealization {
  Eigen::ArrayXd values;          // flattened, x fastest
  Eigen::VectorXi shape;          // lattice extents
  double h;                       // lattice step
  std::vector<std::uint8_t> inside;
  double clipped_mass;            // negative circulant mass clipped, relative
  FieldConfig config;
};

/// Negative circulant eigenvalues are clipped to zero if their relative mass
/// is below 1e-6, otherwise a numeric_error is thrown.
FieldRealization simulate_field(const FieldConfig& config, std::uint64_t seed);

/// S_T = (1/d_T) sum over inside cells of (Y^2 - 1) * cell volume.
double functional_S_T(const FieldRealization& real);

/// Hermite coefficients C_k = int G(u) H_k(u) phi(u) du, 128-node
/// Gauss-Hermite, k = 0..k_max.
Eigen::VectorXd hermite_coeffs(const std::function<double(double)>& G, int k_max);

/// S_T^H = (1/d_T) [ sum G(Y) * cellvol - C_0 * (Riemann measure of D(T)) ].
/// Both terms use the same lattice so that G(u) = u^2 reproduces
/// functional_S_T exactly.
double functional_S_T_general(const FieldRealization& real,
                              const std::function<double(double)>& G);

struct ConvergenceRow {
  double T;
  double ks;
  double mean;
  double var;
  int n_reps;
};

/// For each T: n_reps independent draws of S_T, Kolmogorov-Smirnov distance
/// against the spec's cdf, sample mean and variance. Rows sorted by T.
std::vector<ConvergenceRow> convergence_report(const FieldConfig& base,
                                               const std::vector<double>& T_list,
                                               int n_reps,
                                               const RosenblattSpec& spec,
                                               std::uint64_t seed,
                                               int workers = 1);

/// KS distance between a sample and a cdf given on an interpolation grid.
double ks_distance(Eigen::VectorXd sample, const Eigen::VectorXd& x_grid,
                   const Eigen::VectorXd& cdf_grid);

}  // namespace rosenblatt

#endif

#ifndef ROSENBLATT_DOMAIN_HPP
#define ROSENBLATT_DOMAIN_HPP

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace rosenblatt {

/// Supported regions D in R^d. All have positive measure, finite diameter and
/// closed-form uniform characteristic functions.
struct Interval {
  double a, b;  // a < b, d = 1
};

struct Box {
  Eigen::VectorXd sides;  // corner at the origin, side lengths > 0
};

struct Ball {
  Eigen::VectorXd center;
  double radius;
};

struct UnionOfBalls {
  std::vector<Ball> balls;  // pairwise disjoint interiors
};

struct Annulus {
  Eigen::VectorXd center;
  double r_inner, r_outer;  // 0 < r_inner < r_outer
};

class Domain {
 public:
  using Variant = std::variant<Interval, Box, Ball, UnionOfBalls, Annulus>;

  Domain(Interval iv);              // NOLINT: implicit by design
  Domain(Box bx);                   // NOLINT
  Domain(Ball bl);                  // NOLINT
  Domain(UnionOfBalls ub);          // NOLINT
  Domain(Annulus an);               // NOLINT

  int dim() const { return dim_; }
  const Variant& value() const { return v_; }

  double measure() const;
  double diameter() const;
  bool contains(const Eigen::VectorXd& x) const;
  /// True iff 0 is in the closed domain (homothety T*D is anchored there).
  bool contains_origin() const;

  /// Axis-aligned bounding box [lo, hi].
  void bounding_box(Eigen::VectorXd& lo, Eigen::VectorXd& hi) const;

  std::string describe() const;

 private:
  Variant v_;
  int dim_;
};

/// Volume of the unit d-ball.
double unit_ball_volume(int d);

/// n i.i.d. uniform points in D (rows). Rejection from the bounding box;
/// deterministic given seed.
Eigen::MatrixXd sample_uniform(const Domain& D, std::size_t n, std::uint64_t seed);

/// K(lambda, D) = (1/|D|) int_D exp(i<lambda,x>) dx, by the closed form of the
/// variant. K(0, D) = 1 and |K| <= 1.
std::complex<double> indicator_cf(const Domain& D, const Eigen::VectorXd& lambda);

/// Midpoint quadrature over an axis-aligned partition of the bounding box,
/// clipped to D. Weights of boundary cells come from 32^d membership
/// subsampling; the weight vector is rescaled so it sums to measure(D)
/// exactly. Throws if fewer than 4 nodes survive.
struct QuadratureGrid {
  Eigen::MatrixXd nodes;     // one row per cell midpoint
  Eigen::VectorXd weights;   // positive, sum = measure(D)
  Eigen::VectorXd cell;      // cell side lengths (common to all cells)
  Eigen::VectorXi index;     // flattened lattice index of each node
  Eigen::VectorXi shape;     // lattice extents per axis
  bool all_cells_full;       // true if no cell was clipped (box/interval)
};
QuadratureGrid quadrature_grid(const Domain& D, int resolution);

/// Density of the distance between two independent uniform points in the ball
/// of radius T in R^d: psi(rho) = d rho^{d-1} T^{-d} I_{1-(rho/2T)^2}((d+1)/2, 1/2)
/// on [0, 2T], zero outside.
double distance_density_ball(int d, double T, double rho);

}  // namespace rosenblatt

#endif

#ifndef ROSENBLATT_SPECIAL_HPP
#define ROSENBLATT_SPECIAL_HPP

#include <Eigen/Core>
#include <utility>

namespace rosenblatt {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double reg_inc_beta(double a, double b, double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double reg_inc_gamma_q(double a, double x);

/// Bessel J_nu for nu >= 0, x >= 0.
double bessel_j(double nu, double x);

/// Gamma(nu+1) (2/x)^nu J_nu(x), the radial factor of a ball's uniform
/// characteristic function; equals 1 at x = 0 (series branch for small x).
double ball_cf_radial(double nu, double x);

/// Probabilists' Hermite polynomial H_k(u) by the three-term recursion.
double hermite_poly(int k, double u);

/// Gauss-Hermite rule for integrals against the standard normal density:
/// int f(u) phi(u) du ~= sum_i w_i f(x_i). Nodes/weights from Golub-Welsch.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite_prob(int n);

}  // namespace rosenblatt

#endif

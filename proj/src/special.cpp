#include "rosenblatt/special.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rosenblatt {

namespace {

// Lentz continued fraction for the incomplete beta (Numerical-Recipes layout).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 10 * kEps) return h;
  }
  throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

}  // namespace

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("reg_inc_beta: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lnfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(lnfront);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double reg_inc_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("reg_inc_gamma_q: a must be > 0");
  if (x <= 0.0) return 1.0;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (x < a + 1.0) {
    // P(a,x) by series, Q = 1 - P
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 1; n <= 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - p;
  }
  // Q(a,x) by Lentz continued fraction
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / kTiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 10 * kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double bessel_j(double nu, double x) { return std::cyl_bessel_j(nu, x); }

double ball_cf_radial(double nu, double x) {
  if (x < 1e-4) {
    // Gamma(nu+1)(2/x)^nu J_nu(x) = sum_m (-1)^m (x/2)^{2m} Gamma(nu+1)/(m! Gamma(nu+m+1))
    const double q = 0.25 * x * x;
    return 1.0 - q / (nu + 1.0) + q * q / (2.0 * (nu + 1.0) * (nu + 2.0));
  }
  return std::exp(std::lgamma(nu + 1.0) - nu * std::log(0.5 * x)) *
         std::cyl_bessel_j(nu, x);
}

double hermite_poly(int k, double u) {
  if (k < 0) throw std::invalid_argument("hermite_poly: k must be >= 0");
  double hm = 1.0;  // H_0
  if (k == 0) return hm;
  double h = u;  // H_1
  for (int j = 1; j < k; ++j) {
    const double hn = u * h - static_cast<double>(j) * hm;
    hm = h;
    h = hn;
  }
  return h;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_hermite_prob(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_prob: n must be >= 1");
  // Jacobi matrix of the probabilists' Hermite recursion: beta_k = sqrt(k).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite_prob: eigensolver failed");
  Eigen::VectorXd nodes = es.eigenvalues();
  Eigen::VectorXd weights(n);
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    weights(i) = v * v;  // total mass of phi is 1
  }
  return {std::move(nodes), std::move(weights)};
}

}  // namespace rosenblatt

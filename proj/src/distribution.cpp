#include "rosenblatt/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rosenblatt/parallel.hpp"
#include "rosenblatt/rng.hpp"
#include "rosenblatt/traces.hpp"

namespace rosenblatt {

double RosenblattSpec::third_moment_tail() const {
  const double g = (d - alpha) / d;
  return 8.0 * weyl_tail_power_sum(weyl_coef, g, 3, static_cast<int>(lambdas.size()));
}

RosenblattSpec build_spec(const Domain& D, double alpha, int resolution, int K) {
  const int d = D.dim();
  if (!(alpha > 0.0) || !(alpha < 0.5 * d))
    throw std::domain_error("build_spec: requires 0 < alpha < d/2");
  RieszConfig cfg(D, alpha, resolution);
  Spectrum sp = eigenvalues(cfg, K);
  if (K > sp.n_reliable)
    throw std::invalid_argument("build_spec: K exceeds n_reliable for this resolution");

  RosenblattSpec spec;
  spec.d = d;
  spec.alpha = alpha;
  spec.domain_desc = D.describe();
  spec.domain_measure = D.measure();
  spec.lambdas = sp.eigenvalues.head(K);
  spec.trace_sq = trace_squared(D, alpha).value;
  spec.tail_var = spec.trace_sq - spec.lambdas.squaredNorm();
  if (spec.tail_var < -1e-9)
    throw numeric_error("build_spec: discrete power sum exceeds trace_squared");
  spec.tail_var = std::max(0.0, spec.tail_var);
  spec.weyl_coef =
      weyl_constant(d, alpha) * std::pow(spec.domain_measure, (d - alpha) / d);
  return spec;
}

RosenblattSpec make_spec_from_lambdas(Eigen::VectorXd lambdas, double tail_var,
                                      int d, double alpha) {
  if (lambdas.size() < 1 || (lambdas.array() <= 0.0).any())
    throw std::invalid_argument("make_spec_from_lambdas: lambdas must be positive");
  for (int i = 1; i < lambdas.size(); ++i)
    if (lambdas(i) > lambdas(i - 1))
      throw std::invalid_argument("make_spec_from_lambdas: lambdas must be non-increasing");
  if (tail_var < -1e-9) throw std::invalid_argument("make_spec_from_lambdas: tail_var < 0");
  RosenblattSpec spec;
  spec.d = d;
  spec.alpha = alpha;
  spec.domain_desc = "explicit";
  spec.domain_measure = 1.0;
  spec.lambdas = std::move(lambdas);
  spec.tail_var = std::max(0.0, tail_var);
  spec.trace_sq = spec.lambdas.squaredNorm() + spec.tail_var;
  spec.weyl_coef = weyl_constant(d, alpha);
  return spec;
}

std::complex<double> char_fn(const RosenblattSpec& spec, double z) {
  // (1 - 2iz l)^{-1/2} via the principal log; Re(1 - 2iz l) = 1 keeps the
  // argument off the branch cut.
  std::complex<double> log_psi(0.0, 0.0);
  for (int k = 0; k < spec.lambdas.size(); ++k) {
    const double w = 2.0 * z * spec.lambdas(k);
    log_psi += std::complex<double>(-0.25 * std::log1p(w * w),
                                    0.5 * std::atan(w) - z * spec.lambdas(k));
  }
  log_psi -= std::complex<double>(z * z * spec.tail_var, 0.0);
  return std::exp(log_psi);
}

Eigen::VectorXd cumulants(const RosenblattSpec& spec, int m_max) {
  if (m_max < 2) throw std::invalid_argument("cumulants: m_max must be >= 2");
  const double g = (spec.d - spec.alpha) / spec.d;
  Eigen::VectorXd out(m_max);
  out(0) = 0.0;  // kappa_1
  const int K = static_cast<int>(spec.lambdas.size());
  for (int m = 2; m <= m_max; ++m) {
    double cm = 0.0;
    for (int k = 0; k < K; ++k) cm += std::pow(spec.lambdas(k), m);
    if (m == 2)
      cm += spec.tail_var;
    else
      cm += weyl_tail_power_sum(spec.weyl_coef, g, m, K);
    out(m - 1) = std::pow(2.0, m - 1) * std::tgamma(static_cast<double>(m)) * cm;
  }
  return out;
}

Eigen::VectorXd sample(const RosenblattSpec& spec, std::size_t n,
                       std::uint64_t seed, int workers) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  const int K = static_cast<int>(spec.lambdas.size());
  const double tail_sd = std::sqrt(2.0 * spec.tail_var);
  Eigen::VectorXd out(n);
  constexpr std::size_t kChunk = 1 << 12;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  parallel_chunks(n_chunks, workers, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t b = c * kChunk, e = std::min(n, b + kChunk);
    for (std::size_t i = b; i < e; ++i) {
      double s = 0.0;
      for (int k = 0; k < K; ++k) {
        const double eps = rng.normal();
        s += spec.lambdas(k) * (eps * eps - 1.0);
      }
      out(i) = s + tail_sd * rng.normal();
    }
  });
  return out;
}

Inversion::Inversion(const RosenblattSpec& spec, double x_lo, double x_hi) {
  if (spec.lambdas.size() < 8)
    throw std::invalid_argument(
        "Inversion: need at least 8 eigenvalues for absolutely convergent inversion");
  const double sig = std::sqrt(spec.kappa2());
  const double reach = std::max({std::abs(x_lo), std::abs(x_hi), 20.0 * sig});
  // aliasing period: far beyond both the grid and the distribution's support
  const double period = 8.0 * (2.0 * reach + 24.0 * sig);
  hz_ = 2.0 * std::numbers::pi / period;

  double zc = 1.0;
  while (std::abs(char_fn(spec, zc)) > 1e-13 && zc < 1e7) zc *= 1.2;
  z_cut_ = zc;
  const std::size_t n = static_cast<std::size_t>(z_cut_ / hz_) + 1;
  zs_.resize(n);
  psi_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    zs_(j) = hz_ * static_cast<double>(j + 1);
    psi_(j) = char_fn(spec, zs_(j));
  }
}

double Inversion::density(double x) const {
  // f(x) = (1/pi) int_0^inf Re[e^{-izx} psi(z)] dz; trapezoid with the
  // analytic z=0 half-term Re[...] -> 1.
  double s = 0.0;
  for (int j = 0; j < zs_.size(); ++j) {
    const double t = zs_(j) * x;
    s += std::cos(t) * psi_(j).real() + std::sin(t) * psi_(j).imag();
  }
  return (hz_ / std::numbers::pi) * (0.5 + s);
}

double Inversion::cdf(double x) const {
  // Gil-Pelaez: F(x) = 1/2 - (1/pi) int_0^inf Im[e^{-izx} psi(z)]/z dz;
  // the integrand tends to -x at z = 0 (E[S] = 0), supplying the half-term.
  double s = 0.0;
  for (int j = 0; j < zs_.size(); ++j) {
    const double t = zs_(j) * x;
    const double im = psi_(j).imag() * std::cos(t) - psi_(j).real() * std::sin(t);
    s += im / zs_(j);
  }
  const double F = 0.5 - (hz_ / std::numbers::pi) * (-0.5 * x + s);
  return std::clamp(F, 0.0, 1.0);
}

Eigen::VectorXd density(const RosenblattSpec& spec, const Eigen::VectorXd& x_grid) {
  if (x_grid.size() < 1) throw std::invalid_argument("density: empty grid");
  for (int i = 1; i < x_grid.size(); ++i)
    if (x_grid(i) < x_grid(i - 1)) throw std::invalid_argument("density: grid must be sorted");
  Inversion inv(spec, x_grid(0), x_grid(x_grid.size() - 1));
  Eigen::VectorXd out(x_grid.size());
  for (int i = 0; i < x_grid.size(); ++i) {
    double v = inv.density(x_grid(i));
    if (v < -1e-9)
      throw numeric_error("density: inversion produced a value below the -1e-9 floor");
    out(i) = std::max(0.0, v);
  }
  return out;
}

double cdf(const RosenblattSpec& spec, double x) {
  Inversion inv(spec, x, x);
  return inv.cdf(x);
}

}  // namespace rosenblatt

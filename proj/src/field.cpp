#include "rosenblatt/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "rosenblatt/parallel.hpp"
#include "rosenblatt/rng.hpp"
#include "rosenblatt/special.hpp"

namespace rosenblatt {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

FieldConfig::FieldConfig(int dim, double b, double g, double scale, double h, Domain D)
    : d(dim), beta(b), gamma_exp(g), T(scale), grid_step(h), domain(std::move(D)) {
  if (d != 1 && d != 2) throw std::invalid_argument("FieldConfig: d must be 1 or 2");
  if (domain.dim() != d) throw std::invalid_argument("FieldConfig: domain dimension mismatch");
  if (!(beta > 0.0) || beta > 2.0) throw std::invalid_argument("FieldConfig: beta must be in (0, 2]");
  if (!(gamma_exp > 0.0)) throw std::invalid_argument("FieldConfig: gamma must be > 0");
  const double a = alpha();
  if (!(a > 0.0) || !(a < 0.5 * d))
    throw std::domain_error("FieldConfig: alpha = beta*gamma must be in (0, d/2)");
  if (!(T > 0.0)) throw std::invalid_argument("FieldConfig: T must be > 0");
  const bool allowed = std::holds_alternative<Interval>(domain.value()) ||
                       std::holds_alternative<Box>(domain.value()) ||
                       std::holds_alternative<Ball>(domain.value());
  if (!allowed)
    throw std::invalid_argument("FieldConfig: domain must be an interval, box or ball");
  if (!domain.contains_origin())
    throw std::invalid_argument("FieldConfig: the homothety needs 0 in the closed domain");
  if (!(grid_step > 0.0) || grid_step > domain.diameter() * T / 64.0)
    throw std::invalid_argument("FieldConfig: grid_step must be <= diam(D(T))/64");
}

double slowly_varying_L(double beta, double gamma_exp, double r) {
  if (r <= 0.0) return 0.0;
  return std::pow(r, beta * gamma_exp) / std::pow(1.0 + std::pow(r, beta), gamma_exp);
}

double covariance(const FieldConfig& config, double r) {
  return std::pow(1.0 + std::pow(std::abs(r), config.beta), -config.gamma_exp);
}

double normalizer_d_T(const FieldConfig& config) {
  return std::pow(config.T, config.d - config.alpha()) *
         slowly_varying_L(config.beta, config.gamma_exp, config.T);
}

FieldRealization simulate_field(const FieldConfig& config, std::uint64_t seed) {
  const int d = config.d;
  const double h = config.grid_step;
  Eigen::VectorXd lo, hi;
  config.domain.bounding_box(lo, hi);
  lo *= config.T;
  hi *= config.T;

  Eigen::VectorXi shape(d);
  std::size_t n_total = 1;
  for (int j = 0; j < d; ++j) {
    shape(j) = static_cast<int>(std::ceil((hi(j) - lo(j)) / h - 1e-12));
    n_total *= static_cast<std::size_t>(shape(j));
  }
  if (n_total > (1ull << 24))
    throw std::invalid_argument("simulate_field: lattice exceeds 2^24 points");

  FieldRealization out{Eigen::ArrayXd(), shape, h, {}, 0.0, config};
  Eigen::FFT<double> fft;
  Rng rng(derive_seed(seed, 0));

  if (d == 1) {
    const std::size_t n = static_cast<std::size_t>(shape(0));
    const std::size_t M = next_pow2(2 * n);
    Eigen::VectorXcd c(M);
    for (std::size_t p = 0; p < M; ++p) {
      const std::size_t lag = std::min(p, M - p);
      c(p) = covariance(config, static_cast<double>(lag) * h);
    }
    Eigen::VectorXcd ev(M);
    fft.fwd(ev, c);
    double neg = 0.0, tot = 0.0;
    Eigen::VectorXd evr(M);
    for (std::size_t p = 0; p < M; ++p) {
      const double e = ev(p).real();
      tot += std::abs(e);
      if (e < 0.0) neg += -e;
      evr(p) = std::max(0.0, e);
    }
    out.clipped_mass = tot > 0 ? neg / tot : 0.0;
    if (out.clipped_mass > 1e-6)
      throw numeric_error("simulate_field: circulant embedding not nonnegative definite");
    Eigen::VectorXcd xi(M);
    for (std::size_t p = 0; p < M; ++p) {
      const double a = rng.normal(), b = rng.normal();
      xi(p) = std::complex<double>(a, b) * std::sqrt(evr(p) / static_cast<double>(M));
    }
    Eigen::VectorXcd z(M);
    fft.fwd(z, xi);
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values(i) = z(i).real();
  } else {
    const std::size_t n1 = static_cast<std::size_t>(shape(0));
    const std::size_t n2 = static_cast<std::size_t>(shape(1));
    const std::size_t M1 = next_pow2(2 * n1), M2 = next_pow2(2 * n2);
    Eigen::MatrixXcd c(M1, M2);
    for (std::size_t q = 0; q < M2; ++q) {
      const double l2 = static_cast<double>(std::min(q, M2 - q)) * h;
      for (std::size_t p = 0; p < M1; ++p) {
        const double l1 = static_cast<double>(std::min(p, M1 - p)) * h;
        c(p, q) = covariance(config, std::sqrt(l1 * l1 + l2 * l2));
      }
    }
    // 2-d FFT: columns then rows
    auto fft2_inplace = [&](Eigen::MatrixXcd& mat) {
      Eigen::VectorXcd in(mat.rows()), outv(mat.rows());
      for (int col = 0; col < mat.cols(); ++col) {
        in = mat.col(col);
        fft.fwd(outv, in);
        mat.col(col) = outv;
      }
      Eigen::MatrixXcd t = mat.transpose();
      Eigen::VectorXcd in2(t.rows()), out2(t.rows());
      for (int col = 0; col < t.cols(); ++col) {
        in2 = t.col(col);
        fft.fwd(out2, in2);
        t.col(col) = out2;
      }
      mat = t.transpose();
    };
    fft2_inplace(c);
    double neg = 0.0, tot = 0.0;
    Eigen::MatrixXd evr(M1, M2);
    for (std::size_t q = 0; q < M2; ++q)
      for (std::size_t p = 0; p < M1; ++p) {
        const double e = c(p, q).real();
        tot += std::abs(e);
        if (e < 0.0) neg += -e;
        evr(p, q) = std::max(0.0, e);
      }
    out.clipped_mass = tot > 0 ? neg / tot : 0.0;
    if (out.clipped_mass > 1e-6)
      throw numeric_error("simulate_field: circulant embedding not nonnegative definite");
    const double scale = 1.0 / std::sqrt(static_cast<double>(M1) * static_cast<double>(M2));
    Eigen::MatrixXcd xi(M1, M2);
    for (std::size_t q = 0; q < M2; ++q)
      for (std::size_t p = 0; p < M1; ++p) {
        const double a = rng.normal(), b = rng.normal();
        xi(p, q) = std::complex<double>(a, b) * (std::sqrt(evr(p, q)) * scale);
      }
    fft2_inplace(xi);
    out.values.resize(n1 * n2);
    for (std::size_t q = 0; q < n2; ++q)
      for (std::size_t p = 0; p < n1; ++p)
        out.values(q * n1 + p) = xi(p, q).real();
  }

  // midpoint membership in D(T)
  out.inside.assign(n_total, 0);
  Eigen::VectorXd x(d);
  for (std::size_t f = 0; f < n_total; ++f) {
    std::size_t r = f;
    for (int j = 0; j < d; ++j) {
      const std::size_t ij = r % static_cast<std::size_t>(shape(j));
      r /= static_cast<std::size_t>(shape(j));
      x(j) = (lo(j) + (static_cast<double>(ij) + 0.5) * h) / config.T;
    }
    out.inside[f] = config.domain.contains(x) ? 1 : 0;
  }
  return out;
}

double functional_S_T(const FieldRealization& real) {
  const double cellvol = std::pow(real.h, real.config.d);
  double s = 0.0;
  for (std::size_t i = 0; i < real.inside.size(); ++i)
    if (real.inside[i]) s += real.values(i) * real.values(i) - 1.0;
  return s * cellvol / normalizer_d_T(real.config);
}

Eigen::VectorXd hermite_coeffs(const std::function<double(double)>& G, int k_max) {
  if (k_max < 0) throw std::invalid_argument("hermite_coeffs: k_max must be >= 0");
  const auto [nodes, weights] = gauss_hermite_prob(128);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(k_max + 1);
  for (int i = 0; i < nodes.size(); ++i) {
    const double g = G(nodes(i));
    if (!std::isfinite(g)) throw numeric_error("hermite_coeffs: non-finite integrand");
    for (int k = 0; k <= k_max; ++k) out(k) += weights(i) * g * hermite_poly(k, nodes(i));
  }
  if (!out.allFinite()) throw numeric_error("hermite_coeffs: non-finite quadrature result");
  return out;
}

double functional_S_T_general(const FieldRealization& real,
                              const std::function<double(double)>& G) {
  const double c0 = hermite_coeffs(G, 0)(0);
  const double cellvol = std::pow(real.h, real.config.d);
  double s = 0.0;
  std::size_t n_in = 0;
  for (std::size_t i = 0; i < real.inside.size(); ++i)
    if (real.inside[i]) {
      s += G(real.values(i));
      ++n_in;
    }
  const double measure_lattice = static_cast<double>(n_in) * cellvol;
  return (s * cellvol - c0 * measure_lattice) / normalizer_d_T(real.config);
}

double ks_distance(Eigen::VectorXd sample, const Eigen::VectorXd& x_grid,
                   const Eigen::VectorXd& cdf_grid) {
  std::sort(sample.data(), sample.data() + sample.size());
  const auto interp = [&](double x) {
    if (x <= x_grid(0)) return cdf_grid(0);
    if (x >= x_grid(x_grid.size() - 1)) return cdf_grid(cdf_grid.size() - 1);
    const auto it = std::upper_bound(x_grid.data(), x_grid.data() + x_grid.size(), x);
    const int j = static_cast<int>(it - x_grid.data());
    const double t = (x - x_grid(j - 1)) / (x_grid(j) - x_grid(j - 1));
    return cdf_grid(j - 1) + t * (cdf_grid(j) - cdf_grid(j - 1));
  };
  const double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (int i = 0; i < sample.size(); ++i) {
    const double F = interp(sample(i));
    ks = std::max(ks, std::abs(F - static_cast<double>(i + 1) / n));
    ks = std::max(ks, std::abs(F - static_cast<double>(i) / n));
  }
  return ks;
}

std::vector<ConvergenceRow> convergence_report(const FieldConfig& base,
                                               const std::vector<double>& T_list,
                                               int n_reps,
                                               const RosenblattSpec& spec,
                                               std::uint64_t seed, int workers) {
  if (n_reps < 2) throw std::invalid_argument("convergence_report: n_reps must be >= 2");
  std::vector<double> Ts = T_list;
  std::sort(Ts.begin(), Ts.end());

  // cdf of the limit on an interpolation grid wide enough for every draw
  const double sig = std::sqrt(spec.kappa2());
  const int n_grid = 4001;
  Eigen::VectorXd xg(n_grid), cg(n_grid);
  {
    Inversion inv(spec, -10.0 * sig, 18.0 * sig);
    for (int i = 0; i < n_grid; ++i) {
      xg(i) = -10.0 * sig + 28.0 * sig * i / (n_grid - 1);
      cg(i) = inv.cdf(xg(i));
    }
  }

  std::vector<ConvergenceRow> rows;
  for (std::size_t ti = 0; ti < Ts.size(); ++ti) {
    FieldConfig cfg(base.d, base.beta, base.gamma_exp, Ts[ti], base.grid_step, base.domain);
    Eigen::VectorXd draws(n_reps);
    constexpr int kChunk = 8;
    const std::size_t n_chunks = (n_reps + kChunk - 1) / kChunk;
    parallel_chunks(n_chunks, workers, [&](std::size_t c) {
      const std::size_t b = c * kChunk,
                        e = std::min<std::size_t>(n_reps, b + kChunk);
      for (std::size_t r = b; r < e; ++r) {
        FieldRealization f =
            simulate_field(cfg, derive_seed(seed, (ti << 32) ^ r));
        draws(r) = functional_S_T(f);
      }
    });
    Welford w;
    for (int r = 0; r < n_reps; ++r) w.add(draws(r));
    rows.push_back({Ts[ti], ks_distance(draws, xg, cg), w.mean,
                    w.variance(), n_reps});
  }
  return rows;
}

}  // namespace rosenblatt

#include "rosenblatt/riesz.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rosenblatt/lanczos.hpp"
#include "rosenblatt/parallel.hpp"
#include "rosenblatt/rng.hpp"

namespace rosenblatt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kDenseMax = 4600;

// Average of ||x-y||^{-a} over a pair of congruent rectangular cells offset by
// delta (in cell units). Same-cell case (delta = 0) integrates the radial part
// exactly and quadratures the angle; offset cells use a tent-weighted midpoint
// rule on the difference domain (the integrand only touches its singularity at
// a corner where the tent weight vanishes).
double cell_average_2d(double h1, double h2, int d1, int d2, double a) {
  if (d1 == 0 && d2 == 0) {
    const int nth = 256;
    double total = 0.0;
    for (int half = 0; half < 2; ++half) {
      const double th_lo = half == 0 ? 0.0 : kPi / 4.0;
      const double th_hi = half == 0 ? kPi / 4.0 : kPi / 2.0;
      const double dth = (th_hi - th_lo) / nth;
      for (int i = 0; i < nth; ++i) {
        const double th = th_lo + (i + 0.5) * dth;
        const double c = std::cos(th), s = std::sin(th);
        const double R = 1.0 / std::max(c, s);
        const double g = std::sqrt(h1 * h1 * c * c + h2 * h2 * s * s);
        const double inner = std::pow(R, 2.0 - a) / (2.0 - a) -
                             (c + s) * std::pow(R, 3.0 - a) / (3.0 - a) +
                             c * s * std::pow(R, 4.0 - a) / (4.0 - a);
        total += std::pow(g, -a) * inner * dth;
      }
    }
    return 4.0 * total;
  }
  const int m = 64;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < m; ++i) {
    const double v1 = -1.0 + (i + 0.5) * 2.0 / m;
    const double w1 = 1.0 - std::abs(v1);
    for (int j = 0; j < m; ++j) {
      const double v2 = -1.0 + (j + 0.5) * 2.0 / m;
      const double w = w1 * (1.0 - std::abs(v2));
      const double x = (v1 + d1) * h1, y = (v2 + d2) * h2;
      num += w * std::pow(std::sqrt(x * x + y * y), -a);
      den += w;
    }
  }
  return num / den;
}

// d=1 cell-pair average from the double antiderivative of |u|^{-a}:
// cells of width h offset by m cells; exact.
double cell_average_1d(double h, int m, double a) {
  const auto G = [&](double u) {
    return u <= 0.0 ? 0.0 : std::pow(u, 2.0 - a) / ((1.0 - a) * (2.0 - a));
  };
  const double dm = static_cast<double>(m) * h;
  return (G(dm + h) - 2.0 * G(dm) + G(std::abs(dm - h))) / (h * h);
}

struct NearDiagonalAverages {
  double same, edge1, edge2, corner;  // d=2 offsets (0,0), (1,0), (0,1), (1,1)
};

NearDiagonalAverages near_diag_2d(double h1, double h2, double a) {
  return {cell_average_2d(h1, h2, 0, 0, a), cell_average_2d(h1, h2, 1, 0, a),
          cell_average_2d(h1, h2, 0, 1, a), cell_average_2d(h1, h2, 1, 1, a)};
}

}  // namespace

RieszConfig::RieszConfig(Domain D, double a, int res)
    : domain(std::move(D)),
      alpha(a),
      resolution(res),
      diagonal_rule(domain.dim() == 1 ? DiagonalRule::cell_average_exact_1d
                                      : DiagonalRule::cell_average_subsampled) {
  const int d = domain.dim();
  if (!(alpha > 0.0) || !(alpha < d))
    throw std::domain_error("RieszConfig: alpha must lie strictly in (0, d)");
  if (resolution < 2) throw std::invalid_argument("RieszConfig: resolution must be >= 2");
}

Eigen::MatrixXd nystrom_matrix(const RieszConfig& config) {
  const QuadratureGrid g = quadrature_grid(config.domain, config.resolution);
  const int d = config.domain.dim();
  const double a = config.alpha;
  const std::size_t n = static_cast<std::size_t>(g.nodes.rows());
  if (n < 4) throw std::invalid_argument("nystrom_matrix: fewer than 4 nodes");
  if (d > 2) throw std::invalid_argument("nystrom_matrix: only d = 1, 2 supported");

  Eigen::VectorXd sw = g.weights.array().sqrt();
  Eigen::MatrixXd A(n, n);

  if (d == 1) {
    const double h = g.cell(0);
    const double same = cell_average_1d(h, 0, a);
    const double adj = cell_average_1d(h, 1, a);
    for (std::size_t i = 0; i < n; ++i) {
      A(i, i) = g.weights(i) * same;
      for (std::size_t j = i + 1; j < n; ++j) {
        const int m = std::abs(g.index(i) - g.index(j));
        const double kbar =
            m == 1 ? adj : std::pow(std::abs(g.nodes(i, 0) - g.nodes(j, 0)), -a);
        const double v = sw(i) * sw(j) * kbar;
        A(i, j) = v;
        A(j, i) = v;
      }
    }
    return A;
  }

  const double h1 = g.cell(0), h2 = g.cell(1);
  const NearDiagonalAverages nd = near_diag_2d(h1, h2, a);
  const int res = g.shape(0);
  for (std::size_t i = 0; i < n; ++i) {
    const int i1 = g.index(i) % res, i2 = g.index(i) / res;
    A(i, i) = g.weights(i) * nd.same;
    for (std::size_t j = i + 1; j < n; ++j) {
      const int j1 = g.index(j) % res, j2 = g.index(j) / res;
      const int m1 = std::abs(i1 - j1), m2 = std::abs(i2 - j2);
      double kbar;
      if (m1 <= 1 && m2 <= 1) {
        kbar = (m1 == 1 && m2 == 1) ? nd.corner : (m1 == 1 ? nd.edge1 : nd.edge2);
      } else {
        kbar = std::pow((g.nodes.row(i) - g.nodes.row(j)).norm(), -a);
      }
      const double v = sw(i) * sw(j) * kbar;
      A(i, j) = v;
      A(j, i) = v;
    }
  }
  return A;
}

Spectrum eigenvalues(const RieszConfig& config, int k) {
  const int d = config.domain.dim();
  const bool translation_grid = std::holds_alternative<Interval>(config.domain.value()) ||
                                std::holds_alternative<Box>(config.domain.value());

  std::size_t n_nodes = 1;
  for (int j = 0; j < d; ++j) n_nodes *= static_cast<std::size_t>(config.resolution);
  if (!translation_grid) {
    // clipped grids drop outside cells; count via the quadrature grid
    n_nodes = static_cast<std::size_t>(quadrature_grid(config.domain, config.resolution).nodes.rows());
  }
  if (k < 1 || static_cast<std::size_t>(k) > n_nodes)
    throw std::invalid_argument("eigenvalues: need 1 <= k <= node count");

  Eigen::VectorXd lam;
  if (n_nodes <= kDenseMax) {
    Eigen::MatrixXd A = nystrom_matrix(config);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numeric_error("eigenvalues: dense symmetric eigensolver failed");
    lam = es.eigenvalues().reverse().head(k);
  } else if (translation_grid) {
    lam = lanczos_toeplitz_eigs(config, k);
  } else {
    throw std::invalid_argument(
        "eigenvalues: clipped domains are limited to dense-solver sizes "
        "(<= 4600 nodes); lower the resolution");
  }

  Spectrum s;
  s.eigenvalues = lam;
  s.n_reliable = static_cast<int>(std::min<std::size_t>(k, n_nodes / 5));
  s.alpha = config.alpha;
  s.dim = d;
  s.domain_measure = config.domain.measure();
  s.domain_desc = config.domain.describe();
  s.resolution = config.resolution;
  s.node_count = n_nodes;
  return s;
}

double weyl_constant(int d, double alpha) {
  if (!(alpha > 0.0) || !(alpha < d))
    throw std::domain_error("weyl_constant: alpha must lie strictly in (0, d)");
  const double q = (d - alpha) / d;
  const double lg = 0.5 * alpha * std::log(kPi) + q * (std::log(2.0) - std::log(d)) +
                    std::lgamma(0.5 * (d - alpha)) - std::lgamma(0.5 * alpha) -
                    q * std::lgamma(0.5 * d);
  return std::exp(lg);
}

TraceSquared trace_squared(const Domain& D, double alpha, std::size_t n_mc,
                           std::uint64_t seed, int workers) {
  const int d = D.dim();
  if (!(alpha > 0.0) || !(alpha < 0.5 * d))
    throw std::domain_error("trace_squared: requires 0 < alpha < d/2, integral diverges otherwise");

  if (const auto* iv = std::get_if<Interval>(&D.value())) {
    const double L = iv->b - iv->a;
    return {std::pow(L, 2.0 - 2.0 * alpha) / ((1.0 - alpha) * (1.0 - 2.0 * alpha)), 0.0, true};
  }

  Eigen::VectorXd lo, hi;
  D.bounding_box(lo, hi);
  const Eigen::VectorXd span = hi - lo;
  const double vol2 = D.measure() * D.measure();

  constexpr std::size_t kChunk = 1 << 16;
  const std::size_t n_chunks = (n_mc + kChunk - 1) / kChunk;
  std::vector<Welford> acc(n_chunks);
  parallel_chunks(n_chunks, workers, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    Eigen::VectorXd u(d), v(d);
    const std::size_t m = std::min(kChunk, n_mc - c * kChunk);
    Welford w;
    for (std::size_t i = 0; i < m; ++i) {
      do
        for (int j = 0; j < d; ++j) u(j) = lo(j) + span(j) * rng.uniform();
      while (!D.contains(u));
      do
        for (int j = 0; j < d; ++j) v(j) = lo(j) + span(j) * rng.uniform();
      while (!D.contains(v));
      w.add(std::pow((u - v).norm(), -2.0 * alpha));
    }
    acc[c] = w;
  });
  Welford total;
  for (const auto& w : acc) total.merge(w);
  return {vol2 * total.mean, vol2 * total.stderr_of_mean(), false};
}

Eigen::VectorXd dirichlet_box_eigs(const Eigen::VectorXd& l, int k) {
  const int d = static_cast<int>(l.size());
  if (d < 1 || d > 3) throw std::invalid_argument("dirichlet_box_eigs: dimension must be 1..3");
  if ((l.array() <= 0.0).any())
    throw std::invalid_argument("dirichlet_box_eigs: sides must be positive");
  if (k < 1) throw std::invalid_argument("dirichlet_box_eigs: k must be >= 1");

  const double lmax = l.maxCoeff();
  int C = std::max(2, static_cast<int>(std::ceil(std::pow(2.0 * k, 1.0 / d))) + 2);
  for (;;) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(std::pow(C, d)));
    Eigen::VectorXi idx = Eigen::VectorXi::Ones(d);
    for (;;) {
      double v = 0.0;
      for (int j = 0; j < d; ++j) v += kPi * kPi * idx(j) * idx(j) / (l(j) * l(j));
      vals.push_back(v);
      int j = 0;
      while (j < d && ++idx(j) > C) idx(j++) = 1;
      if (j == d) break;
    }
    std::sort(vals.begin(), vals.end());
    // any multi-index outside the cube has some k_i >= C+1, hence eigenvalue
    // at least pi^2 (C+1)^2 / lmax^2
    const double outside_min = kPi * kPi * (C + 1.0) * (C + 1.0) / (lmax * lmax);
    if (static_cast<int>(vals.size()) >= k && vals[k - 1] < outside_min) {
      Eigen::VectorXd out(k);
      for (int i = 0; i < k; ++i) out(i) = vals[i];
      return out;
    }
    C += std::max(2, C / 2);
  }
}

}  // namespace rosenblatt

#include "rosenblatt/levy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rosenblatt/parallel.hpp"
#include "rosenblatt/rng.hpp"
#include "rosenblatt/special.hpp"

namespace rosenblatt {

namespace {

double exp_sum(const LevyView& view, double u) {
  double s = 0.0;
  for (int k = 0; k < view.k_used; ++k) {
    const double e = u / (2.0 * view.spec->lambdas(k));
    if (e < 700.0) s += std::exp(-e);
  }
  return s;
}

}  // namespace

double levy_density(const LevyView& view, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("levy_density: u must be > 0");
  return exp_sum(view, u) / (2.0 * u);
}

double levy_density_weyl(const LevyView& view, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("levy_density_weyl: u must be > 0");
  const auto& spec = *view.spec;
  const double g = (spec.d - spec.alpha) / spec.d;
  const double s = u / (2.0 * spec.weyl_coef);
  const double a = 1.0 / g;
  const double K = static_cast<double>(view.k_used);
  // sum_{k>K} exp(-s k^g) = (1/g) s^{-1/g} Gamma(1/g, s K^g) - half-term
  const double x = s * std::pow(K, g);
  double tail = 0.0;
  if (x < 700.0) {
    tail = a * std::pow(s, -a) * reg_inc_gamma_q(a, x) * std::exp(std::lgamma(a)) -
           0.5 * std::exp(-x);
    tail = std::max(0.0, tail);
  }
  return (exp_sum(view, u) + tail) / (2.0 * u);
}

std::vector<std::pair<double, double>> thorin_atoms(const LevyView& view) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(view.k_used);
  for (int k = view.k_used - 1; k >= 0; --k) {
    const double loc = 1.0 / (2.0 * view.spec->lambdas(k));
    if (!atoms.empty() && std::abs(atoms.back().first - loc) <= 1e-12 * loc)
      atoms.back().second += 0.5;  // merged tie keeps total mass
    else
      atoms.emplace_back(loc, 0.5);
  }
  return atoms;  // lambdas non-increasing => locations ascending
}

double sample_background_levy(const LevyView& view, double t, std::uint64_t seed) {
  if (t < 0.0) throw std::invalid_argument("sample_background_levy: t must be >= 0");
  if (t == 0.0) return 0.0;
  const auto& lam = view.spec->lambdas;
  Rng rng(derive_seed(seed, 0));
  double z = 0.0;
  for (int k = 0; k < view.k_used; ++k) {
    const std::uint64_t nk = rng.poisson(0.5 * t);
    z += lam(k) * (rng.gamma_int(nk, 0.5) - t);
  }
  // Var[A(1)] = 4, so the dropped k > k_used components carry 4 t tail_var.
  double tail2 = view.spec->tail_var;
  for (int k = view.k_used; k < lam.size(); ++k) tail2 += lam(k) * lam(k);
  z += rng.normal() * std::sqrt(4.0 * t * tail2);
  return z;
}

double ou_deterministic_drift(const LevyView& view, double horizon) {
  double lam_sum = 0.0;
  for (int k = 0; k < view.k_used; ++k) lam_sum += view.spec->lambdas(k);
  return -lam_sum * (1.0 - std::exp(-horizon));
}

Eigen::VectorXd sample_ou_stationary(const LevyView& view, std::size_t n,
                                     double horizon, std::uint64_t seed,
                                     int workers, double step) {
  if (horizon < 20.0)
    throw std::invalid_argument("sample_ou_stationary: horizon must be >= 20");
  if (!(step > 0.0) || step > 0.01)
    throw std::invalid_argument("sample_ou_stationary: step must be in (0, 1e-2]");
  if (n < 1) throw std::invalid_argument("sample_ou_stationary: n must be >= 1");

  const auto& lam = view.spec->lambdas;
  const int K = view.k_used;
  const std::size_t n_steps = static_cast<std::size_t>(std::ceil(horizon / step));
  const double h = horizon / static_cast<double>(n_steps);
  const double drift = ou_deterministic_drift(view, horizon);
  double tail2 = view.spec->tail_var;
  for (int k = K; k < lam.size(); ++k) tail2 += lam(k) * lam(k);
  const double tail_sd = std::sqrt(2.0 * tail2);

  Eigen::VectorXd out(n);
  constexpr std::size_t kChunk = 64;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  parallel_chunks(n_chunks, workers, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t b = c * kChunk, e = std::min(n, b + kChunk);
    for (std::size_t i = b; i < e; ++i) {
      double acc = drift;
      // All A^{(k)} jump at rate 1/2; the superposed process jumps at rate
      // K/2 with the component index uniform on {1..K} and Exp(1/2) sizes.
      for (std::size_t sidx = 0; sidx < n_steps; ++sidx) {
        const std::uint64_t m = rng.poisson(0.5 * h * K);
        if (m == 0) continue;
        const double eu = std::exp(-static_cast<double>(sidx) * h);
        for (std::uint64_t j = 0; j < m; ++j) {
          const int k = std::min<int>(K - 1, static_cast<int>(rng.uniform() * K));
          acc += lam(k) * eu * rng.exponential(0.5);
        }
      }
      out(i) = acc + tail_sd * rng.normal();
    }
  });
  return out;
}

}  // namespace rosenblatt

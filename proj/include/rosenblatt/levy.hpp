#ifndef ROSENBLATT_LEVY_HPP
#define ROSENBLATT_LEVY_HPP

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "rosenblatt/distribution.hpp"

namespace rosenblatt {

/// Levy-Khintchine view of S_inf, borrowing the spec's eigenvalue list.
struct LevyView {
  const RosenblattSpec* spec;
  int k_used;

  LevyView(const RosenblattSpec& s, int k = -1)
      : spec(&s), k_used(k < 0 ? static_cast<int>(s.lambdas.size()) : k) {
    if (k_used < 1 || k_used > s.lambdas.size())
      throw std::invalid_argument("LevyView: k_used out of range");
  }
};

/// Levy density q(u) = (1/2u) sum_{k<=k_used} exp(-u/(2 lambda_k)), u > 0.
double levy_density(const LevyView& view, double u);

/// q(u) with the spectrum continued past k_used by the Weyl law,
/// sum_{k>K} exp(-u k^g / (2 c~ |D|^g)) in incomplete-gamma closed form. The
/// small-u power law of the full Levy density is only visible through this
/// continuation; the truncated sum flattens to K/(2u).
double levy_density_weyl(const LevyView& view, double u);

/// Thorin measure atoms (location 1/(2 lambda_k), mass 1/2), ascending;
/// coincident locations merged with summed mass.
std::vector<std::pair<double, double>> thorin_atoms(const LevyView& view);

/// One draw of the truncated background Levy process
/// Z(t) = sum_k lambda_k A^{(k)}(t), A(t) = gamma_{1/2}(N(t/2)) - t, plus
/// N(0, 4 t tail_var) compensating the k > k_used variance (Var[A(1)] = 4).
double sample_background_levy(const LevyView& view, double t, std::uint64_t seed);

/// n approximate draws of int_0^H e^{-u} dZ(u): Euler steps of size <= step
/// with exact compound-Poisson increments per step (jump superposition across
/// k) and the drift integrated exactly; Gaussian tail compensation keeps the
/// stationary variance at kappa_2.
Eigen::VectorXd sample_ou_stationary(const LevyView& view, std::size_t n,
                                     double horizon, std::uint64_t seed,
                                     int workers = 1, double step = 0.01);

/// Deterministic drift part of an OU draw (the value of a jump-free path):
/// -sum_k lambda_k (1 - e^{-horizon}).
double ou_deterministic_drift(const LevyView& view, double horizon);

}  // namespace rosenblatt

#endif

#ifndef ROSENBLATT_LANCZOS_HPP
#define ROSENBLATT_LANCZOS_HPP

#include <Eigen/Core>

#include "rosenblatt/riesz.hpp"

namespace rosenblatt {

/// Top-k eigenvalues of the Nystrom matrix for interval/box grids without
/// forming it: uniform weights and a translation-invariant kernel make the
/// matrix (block-)Toeplitz, so matvecs run through FFT circulant embedding.
/// Square boxes are split into x<->y symmetry sectors so the forced eigenvalue
/// pairs are resolved by two independent Lanczos runs.
Eigen::VectorXd lanczos_toeplitz_eigs(const RieszConfig& config, int k);

}  // namespace rosenblatt

#endif

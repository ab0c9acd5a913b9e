#ifndef ROSENBLATT_TRACES_HPP
#define ROSENBLATT_TRACES_HPP

#include <cstdint>
#include <string>

#include "rosenblatt/riesz.hpp"

namespace rosenblatt {

enum class TraceMethod { mc, spectral, closed_form };

/// Estimate of c_m = Tr(K_alpha^m), the m-fold cyclic kernel integral.
struct CycleTraceEstimate {
  int m;
  double value;
  double stderr_mc;  // 0 for spectral / closed form
  TraceMethod method;
};

const char* trace_method_name(TraceMethod m);

/// Plain Monte Carlo over i.i.d. uniform m-tuples:
/// |D|^m * mean of prod_j ||x_j - x_{j+1}||^{-alpha} (cyclic).
/// Requires 0 < alpha < d/2, m >= 2, n >= 1e4.
CycleTraceEstimate cycle_trace_mc(const Domain& D, double alpha, int m,
                                  std::size_t n, std::uint64_t seed,
                                  int workers = 1);

/// Power sum over the reliable discrete spectrum plus the Weyl-law tail
/// sum_{k>K} (c~ |D|^{(d-a)/d} k^{-(d-a)/d})^m, summed directly to 1e6 terms
/// with an Euler-Maclaurin remainder.
CycleTraceEstimate cycle_trace_spectral(const Spectrum& spec, int m);

/// Tail of the Weyl power sum: sum_{k > K} (coef * k^{-g})^m. Requires
/// m * g > 1.
double weyl_tail_power_sum(double coef, double g, int m, int K);

}  // namespace rosenblatt

#endif

#include "rosenblatt/traces.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rosenblatt/parallel.hpp"
#include "rosenblatt/rng.hpp"

namespace rosenblatt {

const char* trace_method_name(TraceMethod m) {
  switch (m) {
    case TraceMethod::mc: return "mc";
    case TraceMethod::spectral: return "spectral";
    case TraceMethod::closed_form: return "closed-form";
  }
  return "?";
}

CycleTraceEstimate cycle_trace_mc(const Domain& D, double alpha, int m,
                                  std::size_t n, std::uint64_t seed, int workers) {
  const int d = D.dim();
  if (!(alpha > 0.0) || !(alpha < 0.5 * d))
    throw std::domain_error("cycle_trace_mc: requires 0 < alpha < d/2");
  if (m < 2) throw std::invalid_argument("cycle_trace_mc: m must be >= 2");
  if (n < 10'000) throw std::invalid_argument("cycle_trace_mc: n must be >= 1e4");

  Eigen::VectorXd lo, hi;
  D.bounding_box(lo, hi);
  const Eigen::VectorXd span = hi - lo;
  const double volm = std::pow(D.measure(), m);

  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<Welford> acc(n_chunks);
  parallel_chunks(n_chunks, workers, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    Eigen::MatrixXd pts(m, d);
    Eigen::VectorXd x(d);
    Welford w;
    const std::size_t cnt = std::min(kChunk, n - c * kChunk);
    for (std::size_t i = 0; i < cnt; ++i) {
      for (int j = 0; j < m; ++j) {
        do
          for (int q = 0; q < d; ++q) x(q) = lo(q) + span(q) * rng.uniform();
        while (!D.contains(x));
        pts.row(j) = x;
      }
      double prod = 1.0;
      for (int j = 0; j < m; ++j)
        prod *= std::pow((pts.row(j) - pts.row((j + 1) % m)).norm(), -alpha);
      w.add(prod);
    }
    acc[c] = w;
  });
  Welford total;
  for (const auto& w : acc) total.merge(w);
  return {m, volm * total.mean, volm * total.stderr_of_mean(), TraceMethod::mc};
}

double weyl_tail_power_sum(double coef, double g, int m, int K) {
  const double s = m * g;
  if (!(s > 1.0)) throw std::domain_error("weyl_tail_power_sum: m*(d-alpha)/d must exceed 1");
  const double cm = std::pow(coef, m);
  // direct sum to 1e6 terms, then Euler-Maclaurin remainder of sum k^{-s}
  const long long M = 1'000'000;
  double sum = 0.0;
  for (long long k = M; k > K; --k) sum += std::pow(static_cast<double>(k), -s);
  const double Md = static_cast<double>(M);
  sum += std::pow(Md, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Md, -s) +
         s / 12.0 * std::pow(Md, -s - 1.0);
  return cm * sum;
}

CycleTraceEstimate cycle_trace_spectral(const Spectrum& spec, int m) {
  if (m < 2) throw std::invalid_argument("cycle_trace_spectral: m must be >= 2");
  const int K = std::min<int>(spec.n_reliable, static_cast<int>(spec.eigenvalues.size()));
  if (K < 1) throw std::invalid_argument("cycle_trace_spectral: empty spectrum");
  const double g = (spec.dim - spec.alpha) / spec.dim;
  if (!(m * g > 1.0))
    throw std::domain_error("cycle_trace_spectral: tail series diverges for these parameters");
  double head = 0.0;
  for (int k = 0; k < K; ++k) head += std::pow(spec.eigenvalues(k), m);
  const double coef = weyl_constant(spec.dim, spec.alpha) *
                      std::pow(spec.domain_measure, g);
  return {m, head + weyl_tail_power_sum(coef, g, m, K), 0.0, TraceMethod::spectral};
}

}  // namespace rosenblatt

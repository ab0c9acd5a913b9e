#ifndef ROSENBLATT_PARALLEL_HPP
#define ROSENBLATT_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rosenblatt {

/// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on `workers` threads.
/// Chunks are self-contained units of work with fixed boundaries, so results
/// collected per chunk and merged in chunk order are identical for every
/// worker count.
inline void parallel_chunks(std::size_t n_chunks, int workers,
                            const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<std::size_t>(workers, n_chunks);
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(body);
  for (auto& t : pool) t.join();
}

/// Streaming mean/variance accumulator; merge() is associative enough for our
/// use as long as chunks are merged in a fixed order.
struct Welford {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double d = o.mean - mean;
    const std::size_t t = n + o.n;
    mean += d * static_cast<double>(o.n) / static_cast<double>(t);
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                     static_cast<double>(t);
    n = t;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double stderr_of_mean() const {
    return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
  }
};

}  // namespace rosenblatt

#endif

#include "rosenblatt/lanczos.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/FFT>
#include <vector>

#include "rosenblatt/rng.hpp"

namespace rosenblatt {

namespace {

double cell_average_1d_local(double h, int m, double a) {
  const auto G = [&](double u) {
    return u <= 0.0 ? 0.0 : std::pow(u, 2.0 - a) / ((1.0 - a) * (2.0 - a));
  };
  const double dm = static_cast<double>(m) * h;
  return (G(dm + h) - 2.0 * G(dm) + G(std::abs(dm - h))) / (h * h);
}

double cell_average_2d_local(double h1, double h2, int d1, int d2, double a);

// Matches the entry rule of nystrom_matrix: cell averages on the diagonal and
// its Chebyshev-1 neighbourhood, point kernel elsewhere.
struct ToeplitzSymbol {
  int n1, n2;       // grid extents
  double h1, h2;    // cell sides
  double a;

  double kbar(int l1, int l2) const {
    const int m1 = std::abs(l1), m2 = std::abs(l2);
    if (n2 == 1) {
      if (m1 <= 1) return cell_average_1d_local(h1, m1, a);
      return std::pow(m1 * h1, -a);
    }
    if (m1 <= 1 && m2 <= 1) return cell_average_2d_local(h1, h2, m1, m2, a);
    const double x = m1 * h1, y = m2 * h2;
    return std::pow(std::sqrt(x * x + y * y), -a);
  }
};

// Same quadratures as riesz.cpp; duplicated locally to keep the symbol
// self-contained.
double cell_average_2d_local(double h1, double h2, int d1, int d2, double a) {
  constexpr double kPi = 3.14159265358979323846;
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

// FFT-based application of the (block-)Toeplitz Nystrom matrix.
class ToeplitzApply {
 public:
  ToeplitzApply(const ToeplitzSymbol& sym, double cell_weight)
      : n1_(sym.n1), n2_(sym.n2), m1_(2 * sym.n1), m2_(sym.n2 == 1 ? 1 : 2 * sym.n2),
        w_(cell_weight) {
    Eigen::MatrixXcd c(m1_, m2_);
    for (int q = 0; q < m2_; ++q) {
      const int l2 = q <= m2_ / 2 ? q : q - m2_;
      for (int p = 0; p < m1_; ++p) {
        const int l1 = p <= m1_ / 2 ? p : p - m1_;
        c(p, q) = sym.kbar(l1, l2);
      }
    }
    chat_ = fft2(c, /*inverse=*/false);
    buf_.resize(m1_, m2_);
  }

  std::size_t size() const { return static_cast<std::size_t>(n1_) * n2_; }

  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    buf_.setZero();
    for (int q = 0; q < n2_; ++q)
      for (int p = 0; p < n1_; ++p) buf_(p, q) = x(static_cast<std::size_t>(q) * n1_ + p);
    Eigen::MatrixXcd f = fft2(buf_, false);
    f.array() *= chat_.array();
    Eigen::MatrixXcd b = fft2(f, true);
    y.resize(size());
    for (int q = 0; q < n2_; ++q)
      for (int p = 0; p < n1_; ++p)
        y(static_cast<std::size_t>(q) * n1_ + p) = w_ * b(p, q).real();
  }

 private:
  Eigen::MatrixXcd fft2(const Eigen::MatrixXcd& in, bool inverse) {
    Eigen::MatrixXcd t = in;
    Eigen::VectorXcd col(t.rows()), out(t.rows());
    for (int q = 0; q < t.cols(); ++q) {
      col = t.col(q);
      if (inverse)
        fft_.inv(out, col);
      else
        fft_.fwd(out, col);
      t.col(q) = out;
    }
    if (t.cols() == 1) return t;
    Eigen::MatrixXcd tt = t.transpose();
    Eigen::VectorXcd c2(tt.rows()), o2(tt.rows());
    for (int q = 0; q < tt.cols(); ++q) {
      c2 = tt.col(q);
      if (inverse)
        fft_.inv(o2, c2);
      else
        fft_.fwd(o2, c2);
      tt.col(q) = o2;
    }
    return tt.transpose();
  }

  int n1_, n2_, m1_, m2_;
  double w_;
  Eigen::MatrixXcd chat_;
  Eigen::MatrixXcd buf_;
  Eigen::FFT<double> fft_;
};

enum class Sector { none, symmetric, antisymmetric };

void project_sector(Eigen::VectorXd& v, Sector s, int n) {
  if (s == Sector::none) return;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      const std::size_t ij = static_cast<std::size_t>(j) * n + i;
      const std::size_t ji = static_cast<std::size_t>(i) * n + j;
      const double sum = 0.5 * (v(ij) + v(ji)), dif = 0.5 * (v(ij) - v(ji));
      if (s == Sector::symmetric) {
        v(ij) = sum;
        v(ji) = sum;
      } else {
        v(ij) = dif;
        v(ji) = -dif;
      }
    }
  if (s == Sector::antisymmetric)
    for (int i = 0; i < n; ++i) v(static_cast<std::size_t>(i) * n + i) = 0.0;
}

struct RitzSet {
  std::vector<double> values;  // converged, descending
};

RitzSet lanczos_sector(ToeplitzApply& op, Sector sector, int n_side, int want,
                       std::uint64_t seed) {
  const std::size_t N = op.size();
  const int m_cap = static_cast<int>(std::min<std::size_t>(N, 1000));
  Eigen::MatrixXd V(N, m_cap);
  Eigen::VectorXd alpha(m_cap), beta(m_cap);
  Eigen::VectorXd v(N), w(N);

  Rng rng(derive_seed(seed, sector == Sector::antisymmetric ? 2 : 1));
  for (std::size_t i = 0; i < N; ++i) v(i) = rng.normal();
  project_sector(v, sector, n_side);
  double nv = v.norm();
  if (nv == 0.0) return {};
  v /= nv;
  V.col(0) = v;

  int m = 0;
  RitzSet result;
  const auto harvest = [&](int mm) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(mm, mm);
    for (int i = 0; i < mm; ++i) {
      T(i, i) = alpha(i);
      if (i + 1 < mm) {
        T(i, i + 1) = beta(i);
        T(i + 1, i) = beta(i);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    if (es.info() != Eigen::Success) throw numeric_error("lanczos: tridiagonal solve failed");
    const double bm = beta(mm - 1);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<double> conv;
    for (int i = mm - 1; i >= 0; --i) {  // descending eigenvalues
      const double resid = std::abs(bm * es.eigenvectors()(mm - 1, i));
      if (resid <= 1e-10 * scale)
        conv.push_back(es.eigenvalues()(i));
      else if (static_cast<int>(conv.size()) < want)
        break;  // an unconverged value inside the wanted range: keep iterating
    }
    return conv;
  };

  bool exhausted = false;
  for (int stage_end = std::min(m_cap, std::max(120, want + 60)); m < m_cap;
       stage_end = std::min(m_cap, stage_end + 180)) {
    for (; m < stage_end; ++m) {
      op.apply(V.col(m), w);
      project_sector(w, sector, n_side);
      if (m > 0) w -= beta(m - 1) * V.col(m - 1);
      alpha(m) = V.col(m).dot(w);
      w -= alpha(m) * V.col(m);
      // full reorthogonalization, two passes
      for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd coef = V.leftCols(m + 1).transpose() * w;
        w.noalias() -= V.leftCols(m + 1) * coef;
      }
      beta(m) = w.norm();
      if (beta(m) < 1e-13) {  // invariant subspace exhausted
        exhausted = true;
        ++m;
        break;
      }
      if (m + 1 < m_cap) V.col(m + 1) = w / beta(m);
    }
    std::vector<double> conv = harvest(m);
    if (static_cast<int>(conv.size()) >= want || exhausted || m >= m_cap) {
      result.values = std::move(conv);
      break;
    }
  }
  return result;
}

}  // namespace

Eigen::VectorXd lanczos_toeplitz_eigs(const RieszConfig& config, int k) {
  const int d = config.domain.dim();
  ToeplitzSymbol sym;
  double cell_weight;
  int n_side = 0;
  bool square = false;
  if (d == 1) {
    const auto& iv = std::get<Interval>(config.domain.value());
    sym = {config.resolution, 1, (iv.b - iv.a) / config.resolution, 0.0, config.alpha};
    cell_weight = sym.h1;
  } else {
    const auto& bx = std::get<Box>(config.domain.value());
    if (d != 2) throw std::invalid_argument("lanczos_toeplitz_eigs: only d = 1, 2 supported");
    sym = {config.resolution, config.resolution, bx.sides(0) / config.resolution,
           bx.sides(1) / config.resolution, config.alpha};
    cell_weight = sym.h1 * sym.h2;
    n_side = config.resolution;
    square = std::abs(sym.h1 - sym.h2) <= 1e-14 * std::max(sym.h1, sym.h2);
  }

  ToeplitzApply op(sym, cell_weight);
  std::vector<double> all;
  const std::uint64_t seed = 0xA2C7ULL;
  if (square && d == 2) {
    const int want = std::min(k, 3 * k / 4 + 40);
    for (Sector s : {Sector::symmetric, Sector::antisymmetric}) {
      RitzSet r = lanczos_sector(op, s, n_side, want, seed);
      all.insert(all.end(), r.values.begin(), r.values.end());
    }
  } else {
    RitzSet r = lanczos_sector(op, Sector::none, n_side, k, seed);
    all = std::move(r.values);
  }
  std::sort(all.begin(), all.end(), std::greater<>());
  if (static_cast<int>(all.size()) < k)
    throw numeric_error("lanczos_toeplitz_eigs: fewer converged eigenvalues than requested");
  Eigen::VectorXd out(k);
  for (int i = 0; i < k; ++i) out(i) = all[i];
  return out;
}

}  // namespace rosenblatt

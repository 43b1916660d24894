#pragma once

// Test-side oracles. Nothing here calls the library's eigen kernels or
// lattice builders: each helper recomputes its answer by a separate route.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace fytest {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using cplx = std::complex<double>;

// Seeded generator for property tests (xorshift64*, independent of the
// library's SplitMix64 stream).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed * 2654435761u + 0x9E3779B97F4A7C15ull) {
    if (s_ == 0) s_ = 1;
  }
  std::uint64_t next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1Dull;
  }
  double uniform(double lo = -1.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Mat matrix(int d, bool symmetric) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = uniform();
    if (symmetric) m = (0.5 * (m + m.transpose())).eval();
    return m;
  }
  Vec vector(int d) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = uniform();
    return v;
  }

 private:
  std::uint64_t s_;
};

// Characteristic polynomial coefficients c_0..c_n of det(lambda I - A)
// (c_n = 1) by the Faddeev-LeVerrier recursion in long double.
inline std::vector<long double> charpoly(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const LMat al = a.cast<long double>();
  std::vector<long double> c(n + 1, 0.0L);
  c[n] = 1.0L;
  LMat m = LMat::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = al * m;
    m.diagonal().array() += c[n - k + 1];
    const LMat am = al * m;
    c[n - k] = -am.trace() / static_cast<long double>(k);
  }
  return c;
}

// All roots of a monic polynomial by Durand-Kerner, polished by Newton.
inline std::vector<cplx> poly_roots(const std::vector<long double>& c) {
  using lc = std::complex<long double>;
  const int n = static_cast<int>(c.size()) - 1;
  auto eval = [&](lc z) {
    lc p = 1.0L;
    for (int k = n - 1; k >= 0; --k) p = p * z + c[k];
    return p;
  };
  auto deriv = [&](lc z) {
    lc p = static_cast<long double>(n);
    for (int k = n - 1; k >= 1; --k) p = p * z + static_cast<long double>(k) * c[k];
    return p;
  };
  long double radius = 0.0L;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(c[k]));
  radius = 1.0L + radius;
  std::vector<lc> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius * 0.9L, 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L);
  for (int it = 0; it < 5000; ++it) {
    long double change = 0.0L;
    for (int i = 0; i < n; ++i) {
      lc den = 1.0L;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      const lc step = eval(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-18L) break;
  }
  for (auto& r : z)
    for (int it = 0; it < 3; ++it) {
      const lc d = deriv(r);
      if (std::abs(d) == 0.0L) break;
      r -= eval(r) / d;
    }
  std::vector<cplx> out;
  for (const auto& r : z) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

inline std::vector<cplx> charpoly_eigenvalues(const Mat& a) { return poly_roots(charpoly(a)); }

// Largest distance from any point of `a` to the nearest point of `b`.
inline double nearest(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double best = INFINITY;
    for (const auto& q : b) best = std::min(best, std::abs(p - q));
    worst = std::max(worst, best);
  }
  return worst;
}

// One-particle hopping matrix t(2I - S - S^T), Dirichlet or periodic.
inline Mat hopping(int l, double t, bool ring) {
  Mat m = Mat::Zero(l, l);
  for (int i = 0; i < l; ++i) {
    m(i, i) += 2.0 * t;
    if (i + 1 < l) {
      m(i, i + 1) -= t;
      m(i + 1, i) -= t;
    } else if (ring && l > 1) {
      m(i, 0) -= t;
      m(0, i) -= t;
    }
  }
  return m;
}

// Kronecker sum over n particles; particle 1 is the slowest index.
inline Mat kronecker_h0(int n, int l, double t, bool ring) {
  const Mat h1 = hopping(l, t, ring);
  const Mat id = Mat::Identity(l, l);
  Mat total = Mat::Zero(static_cast<Eigen::Index>(std::pow(l, n)),
                        static_cast<Eigen::Index>(std::pow(l, n)));
  for (int p = 0; p < n; ++p) {
    Mat term = (p == 0) ? h1 : id;
    for (int q = 1; q < n; ++q) {
      const Mat next = Eigen::kroneckerProduct(term, q == p ? h1 : id).eval();
      term = next;
    }
    total += term;
  }
  return total;
}

// Sorted sums of one-particle Dirichlet levels 2t(1 - cos(k pi/(L+1))).
inline std::vector<double> dirichlet_levels(int n, int l, double t) {
  std::vector<double> one;
  for (int k = 1; k <= l; ++k)
    one.push_back(2.0 * t * (1.0 - std::cos(k * std::numbers::pi / (l + 1))));
  std::vector<double> levels{0.0};
  for (int p = 0; p < n; ++p) {
    std::vector<double> next;
    for (double a : levels)
      for (double b : one) next.push_back(a + b);
    levels = std::move(next);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

// Full Hamiltonian of three particles by explicit coordinate loops.
inline Mat direct_three_body(int l, double t, const std::function<double(int)>& v, bool ring) {
  const int d = l * l * l;
  Mat h = Mat::Zero(d, d);
  auto idx = [&](int a, int b, int c) { return (a * l + b) * l + c; };
  auto sep = [&](int a, int b) {
    const int r = std::abs(a - b);
    return ring ? std::min(r, l - r) : r;
  };
  auto wrap = [&](int x) -> int {
    if (ring) return (x + l) % l;
    return (x < 0 || x >= l) ? -1 : x;
  };
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b)
      for (int c = 0; c < l; ++c) {
        const int i = idx(a, b, c);
        h(i, i) += 6.0 * t + v(sep(a, b)) + v(sep(a, c)) + v(sep(b, c));
        for (int s : {-1, 1}) {
          if (int y = wrap(a + s); y >= 0) h(i, idx(y, b, c)) -= t;
          if (int y = wrap(b + s); y >= 0) h(i, idx(a, y, c)) -= t;
          if (int y = wrap(c + s); y >= 0) h(i, idx(a, b, y)) -= t;
        }
      }
  return h;
}

inline double gaussian_well(int r) { return -4.0 * std::exp(-static_cast<double>(r * r)); }

// Independently computed reference values (numpy eigvalsh on Kronecker-sum
// assemblies), frozen.
inline constexpr double kTiny3Ground = -7.464396364388282;
inline constexpr double kTiny3First = -7.316345021877903;
inline constexpr double kTiny4Ground = -28.448373683564920;
inline constexpr double kTiny4First = -28.442279987030403;
inline constexpr double kTiny3Core0 = 1.238895417934342;
inline constexpr double kTiny3Core1 = 4.287616334749440;
inline constexpr double kTiny3TwoBodyGround = -1.9588673142891264;

}  // namespace fytest

#ifndef TWOFACTOR_EXACTMAT_HPP_
#define TWOFACTOR_EXACTMAT_HPP_

// Exact arbitrary-precision count matrices and a floating-point dominant
// eigenvalue solver for nonnegative matrices.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twofactor/transfer.hpp"

namespace twofactor {

using BigInt = mpz_class;

/// Dense square matrix of arbitrary-precision integers, row-major.
class CountMatrix {
 public:
  CountMatrix() = default;
  explicit CountMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static CountMatrix identity(std::size_t n) {
    CountMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
  }

  static CountMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    CountMatrix out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("count matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  template <typename Vertex>
  static CountMatrix from_digraph(const Digraph<Vertex>& d) {
    CountMatrix out(d.order());
    for (std::size_t i = 0; i < d.order(); ++i)
      for (const Arc& a : d.arcs(i)) out(i, a.to) = a.multiplicity;
    return out;
  }

  std::size_t order() const { return n_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const BigInt> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_nonnegative() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const BigInt& x) { return sgn(x) >= 0; });
  }

  friend bool operator==(const CountMatrix& x, const CountMatrix& y) {
    return x.n_ == y.n_ && x.entries_ == y.entries_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<BigInt> entries_;
};

inline CountMatrix mat_mul(const CountMatrix& a, const CountMatrix& b) {
  if (a.order() != b.order()) {
    throw std::invalid_argument("mat_mul: orders " + std::to_string(a.order()) + " and " +
                                std::to_string(b.order()) + " differ");
  }
  const std::size_t n = a.order();
  CountMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const BigInt& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(b(k, j)) != 0) mpz_addmul(out(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  }
  return out;
}

/// Binary exponentiation; A^0 is the identity.
inline CountMatrix mat_pow(const CountMatrix& a, unsigned long long n) {
  CountMatrix result = CountMatrix::identity(a.order());
  CountMatrix base = a;
  while (n > 0) {
    if (n & 1ULL) result = mat_mul(result, base);
    n >>= 1;
    if (n > 0) base = mat_mul(base, base);
  }
  return result;
}

/// P <- P * T for a digraph adjacency T, in place.
template <typename Vertex>
void multiply_by_adjacency(CountMatrix& p, const Digraph<Vertex>& t) {
  if (p.order() != t.order()) throw std::invalid_argument("multiply_by_adjacency: order mismatch");
  const std::size_t n = p.order();
  CountMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const BigInt& pik = p(i, k);
      if (sgn(pik) == 0) continue;
      for (const Arc& a : t.arcs(k)) {
        if (a.multiplicity == 1) {
          out(i, a.to) += pik;
        } else {
          mpz_addmul_ui(out(i, a.to).get_mpz_t(), pik.get_mpz_t(), a.multiplicity);
        }
      }
    }
  }
  p = std::move(out);
}

/// x <- x * T for a row vector x.
template <typename Vertex>
void multiply_by_adjacency(std::vector<BigInt>& x, const Digraph<Vertex>& t) {
  if (x.size() != t.order()) throw std::invalid_argument("multiply_by_adjacency: order mismatch");
  std::vector<BigInt> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (sgn(x[k]) == 0) continue;
    for (const Arc& a : t.arcs(k)) {
      if (a.multiplicity == 1) {
        out[a.to] += x[k];
      } else {
        mpz_addmul_ui(out[a.to].get_mpz_t(), x[k].get_mpz_t(), a.multiplicity);
      }
    }
  }
  x = std::move(out);
}

struct IndexPair {
  std::size_t row;
  std::size_t col;
};

/// Sum of the selected entries. With the pairs of a 0/1 matrix M this is
/// tr(P * M^T).
inline BigInt selected_trace(const CountMatrix& p, std::span<const IndexPair> pairs) {
  BigInt total = 0;
  for (const IndexPair& ij : pairs) {
    if (ij.row >= p.order() || ij.col >= p.order()) {
      throw std::out_of_range("selected_trace: index pair outside the matrix");
    }
    total += p(ij.row, ij.col);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Spectral estimates

/// Dense real square matrix, row-major.
struct RealMatrix {
  std::size_t n = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

  template <typename Vertex>
  static RealMatrix from_digraph(const Digraph<Vertex>& d) {
    RealMatrix out{d.order(), std::vector<double>(d.order() * d.order(), 0.0)};
    for (std::size_t i = 0; i < d.order(); ++i)
      for (const Arc& a : d.arcs(i)) out.entries[i * out.n + a.to] = a.multiplicity;
    return out;
  }
};

struct Spectrum {
  double theta = 0.0;
  double residual = 0.0;
  long iterations = 0;
  std::vector<double> vector;  // normalised to unit 2-norm
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long kMaxPowerIterations = 1'000'000;

/// Power iteration for the spectral radius of a nonnegative irreducible
/// matrix. Iterates with A + I (same Perron vector, no sign-alternating
/// competitor for bipartite components) from the all-ones vector; theta is
/// the Rayleigh quotient of A. Converged when ||Av - theta v||_inf / ||v||_inf
/// <= tol.
inline Spectrum dominant_eigenvalue(const RealMatrix& a, double tol = 1e-12,
                                    long max_iterations = kMaxPowerIterations) {
  const std::size_t n = a.n;
  if (n == 0) throw std::invalid_argument("dominant_eigenvalue of an empty matrix");
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> av(n);
  Spectrum out;
  for (long it = 1; it <= max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
      av[i] = s;
    }
    double vav = 0.0, vv = 0.0;
    for (std::size_t i = 0; i < n; ++i) vav += v[i] * av[i], vv += v[i] * v[i];
    const double theta = vav / vv;
    double res = 0.0, vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res = std::max(res, std::abs(av[i] - theta * v[i]));
      vmax = std::max(vmax, std::abs(v[i]));
    }
    out.theta = theta;
    out.residual = res / vmax;
    out.iterations = it;
    if (out.residual <= tol) {
      out.vector = v;
      return out;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = av[i] + v[i];
      norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  throw ConvergenceError("power iteration did not reach residual " + std::to_string(tol) + " after " +
                         std::to_string(max_iterations) + " iterations (last " +
                         std::to_string(out.residual) + ")");
}

/// Natural log of a positive big integer, without overflowing a double.
inline double log_of(const BigInt& x) {
  if (sgn(x) <= 0) throw std::domain_error("log of a non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

inline constexpr int kAmplitudeWindow = 5;

/// Leading coefficient a in f(n) ~ a * theta^n, from f(n)/theta^n averaged
/// over a window of consecutive terms ending at the last one. `values[k]` is
/// f(k+1).
inline double amplitude_estimate(std::span<const BigInt> values, double theta,
                                 int window = kAmplitudeWindow) {
  if (window < 1) throw std::invalid_argument("amplitude window must be >= 1");
  if (values.size() < static_cast<std::size_t>(window)) {
    throw std::invalid_argument("series too short for amplitude estimate");
  }
  double sum = 0.0;
  for (std::size_t k = values.size() - static_cast<std::size_t>(window); k < values.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    const double log_ratio = log_of(values[k]) - n * std::log(theta);
    sum += std::exp(log_ratio);
  }
  return sum / window;
}

}  // namespace twofactor

#endif  // TWOFACTOR_EXACTMAT_HPP_

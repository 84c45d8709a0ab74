#ifndef TWOFACTOR_RECURRENCE_HPP_
#define TWOFACTOR_RECURRENCE_HPP_

// Minimal linear recurrences and rational generating functions of exact
// integer series, all in rational arithmetic.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "twofactor/enumerate.hpp"
#include "twofactor/exactmat.hpp"

namespace twofactor {

using Rational = mpq_class;

inline constexpr int kRecurrenceMargin = 4;

/// f(n) = sum_{k=1..order} coeffs[k-1] * f(n-k) for every n > offset, with the
/// series indexed from n = 1.
struct Recurrence {
  int order = 0;
  std::vector<Rational> coeffs;
  int offset = 0;        // linear complexity; the first `offset` terms are free
  std::size_t terms = 0; // series length it was fitted on
  bool confirmed = false;
};

/// numerator / denominator, both with integer coefficients (index = power of
/// x), denominator(0) = 1 and content 1 overall.
struct RationalGF {
  std::vector<BigInt> numerator;
  std::vector<BigInt> denominator;

  friend bool operator==(const RationalGF&, const RationalGF&) = default;
};

namespace detail {

template <typename T>
void trim(std::vector<T>& poly) {
  while (!poly.empty() && sgn(poly.back()) == 0) poly.pop_back();
}

/// Berlekamp-Massey over Q. Returns the connection polynomial C (C[0] = 1) and
/// the linear complexity L: s_n + sum_{i>=1} C[i] s_{n-i} = 0 for n >= L.
inline std::vector<Rational> berlekamp_massey(std::span<const BigInt> s, int& complexity) {
  std::vector<Rational> c{1}, b{1};
  int l = 0;
  int shift = 1;
  Rational last = 1;
  for (std::size_t n = 0; n < s.size(); ++n) {
    Rational d = s[n];
    for (int i = 1; i <= l && i < static_cast<int>(c.size()); ++i) d += c[static_cast<std::size_t>(i)] * s[n - static_cast<std::size_t>(i)];
    if (d == 0) {
      ++shift;
      continue;
    }
    const Rational factor = d / last;
    std::vector<Rational> prev = c;
    if (c.size() < b.size() + static_cast<std::size_t>(shift)) c.resize(b.size() + static_cast<std::size_t>(shift));
    for (std::size_t i = 0; i < b.size(); ++i) c[i + static_cast<std::size_t>(shift)] -= factor * b[i];
    if (2 * l <= static_cast<int>(n)) {
      l = static_cast<int>(n) + 1 - l;
      b = std::move(prev);
      last = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  trim(c);
  complexity = l;
  return c;
}

inline BigInt lcm_of_denominators(const std::vector<Rational>& v) {
  BigInt out = 1;
  for (const Rational& q : v) mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), q.get_den_mpz_t());
  return out;
}

/// Exact rank by plain Gaussian elimination over Q.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace detail

/// Shortest recurrence consistent with every term (Berlekamp-Massey). It is
/// `confirmed` only if the series has at least 2 * offset + margin terms.
inline Recurrence minimal_recurrence(std::span<const BigInt> s, int margin = kRecurrenceMargin) {
  if (s.empty()) throw std::invalid_argument("minimal_recurrence: empty series");
  int complexity = 0;
  const auto c = detail::berlekamp_massey(s, complexity);
  Recurrence r;
  r.order = static_cast<int>(c.size()) - 1;
  for (int k = 1; k <= r.order; ++k) r.coeffs.push_back(-c[static_cast<std::size_t>(k)]);
  r.offset = complexity;
  r.terms = s.size();
  r.confirmed = s.size() >= static_cast<std::size_t>(2 * complexity + margin);
  return r;
}

inline bool satisfies(const Recurrence& r, std::span<const BigInt> s) {
  for (std::size_t n = static_cast<std::size_t>(std::max(r.offset, r.order)); n < s.size(); ++n) {
    Rational acc = 0;
    for (int k = 1; k <= r.order; ++k) acc += r.coeffs[static_cast<std::size_t>(k - 1)] * s[n - static_cast<std::size_t>(k)];
    if (acc != Rational(s[n])) return false;
  }
  return true;
}

/// True when no recurrence of order r.order - 1 holds on the tail the
/// recurrence covers: the vectors (s_i, ..., s_{i+d-1}), i >= offset, span Q^d.
inline bool is_minimal(const Recurrence& r, std::span<const BigInt> s) {
  const std::size_t d = static_cast<std::size_t>(r.order);
  if (d == 0) return true;
  const std::size_t start = static_cast<std::size_t>(r.offset);
  if (s.size() < start + 2 * d - 1) throw std::invalid_argument("is_minimal: series too short");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = start; i + d <= s.size(); ++i) {
    std::vector<Rational> row;
    for (std::size_t k = 0; k < d; ++k) row.emplace_back(s[i + k]);
    rows.push_back(std::move(row));
  }
  return detail::rank(std::move(rows)) == d;
}

/// sum_{n>=1} s_n x^n = x P(x) / C(x), C from the recurrence and
/// P = (C * S) mod x^offset.
inline RationalGF to_generating_function(std::span<const BigInt> s, const Recurrence& r) {
  if (!satisfies(r, s)) throw std::invalid_argument("to_generating_function: recurrence does not fit the series");
  std::vector<Rational> den(static_cast<std::size_t>(r.order) + 1);
  den[0] = 1;
  for (int k = 1; k <= r.order; ++k) den[static_cast<std::size_t>(k)] = -r.coeffs[static_cast<std::size_t>(k - 1)];
  const std::size_t low = static_cast<std::size_t>(std::max(r.offset, r.order));
  if (s.size() < low) throw std::invalid_argument("to_generating_function: series shorter than the recurrence");
  std::vector<Rational> num(low + 1);  // num[0] = 0 for the x factor
  for (std::size_t i = 0; i < low; ++i) {
    Rational acc = 0;
    for (std::size_t k = 0; k <= i && k < den.size(); ++k) acc += den[k] * s[i - k];
    num[i + 1] = acc;
  }
  detail::trim(num);

  std::vector<Rational> all = num;
  all.insert(all.end(), den.begin(), den.end());
  const BigInt scale = detail::lcm_of_denominators(all);
  RationalGF g;
  BigInt content = 0;
  auto to_int = [&](const std::vector<Rational>& in, std::vector<BigInt>& out) {
    for (const Rational& q : in) {
      BigInt v = q.get_num() * (scale / q.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
      out.push_back(std::move(v));
    }
  };
  to_int(num, g.numerator);
  to_int(den, g.denominator);
  if (sgn(content) != 0 && content != 1) {
    for (auto& v : g.numerator) v /= content;
    for (auto& v : g.denominator) v /= content;
  }
  if (sgn(g.denominator[0]) < 0) {
    for (auto& v : g.numerator) v = -v;
    for (auto& v : g.denominator) v = -v;
  }
  if (g.denominator[0] != 1) {
    throw std::logic_error("generating function denominator does not reduce to constant term 1");
  }
  return g;
}

/// Coefficients of x^1 .. x^N.
inline std::vector<BigInt> expand(const RationalGF& g, std::size_t N) {
  if (g.denominator.empty() || sgn(g.denominator[0]) == 0) {
    throw std::invalid_argument("expand: denominator constant term must be nonzero");
  }
  std::vector<Rational> coeff(N + 1);
  const Rational d0 = g.denominator[0];
  for (std::size_t n = 0; n <= N; ++n) {
    Rational acc = n < g.numerator.size() ? Rational(g.numerator[n]) : Rational(0);
    for (std::size_t k = 1; k < g.denominator.size() && k <= n; ++k) acc -= g.denominator[k] * coeff[n - k];
    coeff[n] = acc / d0;
  }
  std::vector<BigInt> out;
  out.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) {
    if (coeff[n].get_den() != 1) throw std::domain_error("expand: non-integral coefficient");
    out.push_back(coeff[n].get_num());
  }
  return out;
}

/// Degree of the denominator; this is what the published order tables list.
inline int denominator_degree(const RationalGF& g) { return static_cast<int>(g.denominator.size()) - 1; }

struct OrderReport {
  int order = 0;
  int offset = 0;
  std::size_t terms = 0;
  Recurrence recurrence;
};

/// Minimal recurrence order of a family's series, computing more terms until
/// the fit is confirmed.
inline OrderReport order_report(Family family, int m, int p = 0, std::size_t max_terms = 1024,
                                Method method = Method::kReduced) {
  std::size_t n = 16;
  while (true) {
    const Series s = series(family, m, p, static_cast<long long>(n), method);
    Recurrence r = minimal_recurrence(s.values);
    if (r.confirmed) return {r.order, r.offset, n, std::move(r)};
    if (n >= max_terms) {
      throw std::runtime_error("order_report: no confirmed recurrence for " + std::string(to_string(family)) +
                               " m=" + std::to_string(m) + " p=" + std::to_string(p) + " within " +
                               std::to_string(max_terms) + " terms");
    }
    n = std::min(max_terms, std::max(2 * n, static_cast<std::size_t>(2 * r.offset + kRecurrenceMargin)));
  }
}

inline std::string poly_to_string(const std::vector<BigInt>& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (sgn(p[k]) == 0) continue;
    const BigInt mag = abs(p[k]);
    if (out.empty()) {
      if (sgn(p[k]) < 0) out += "-";
    } else {
      out += sgn(p[k]) < 0 ? " - " : " + ";
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) out += mag.get_str();
    if (k > 0) {
      if (!unit) out += "*";
      out += "x";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string to_string(const RationalGF& g) {
  return "(" + poly_to_string(g.numerator) + ")/(" + poly_to_string(g.denominator) + ")";
}

inline std::string to_string(const Recurrence& r) {
  std::string out = "f(n) =";
  for (int k = 1; k <= r.order; ++k) {
    const Rational& c = r.coeffs[static_cast<std::size_t>(k - 1)];
    if (c == 0) continue;
    out += (sgn(c) < 0 ? " - " : (out.back() == '=' ? " " : " + "));
    const Rational mag = abs(c);
    if (mag != 1) out += mag.get_str() + "*";
    out += "f(n-" + std::to_string(k) + ")";
  }
  if (r.order == 0) out += " 0";
  return out + "  (n > " + std::to_string(r.offset) + ")";
}

}  // namespace twofactor

#endif  // TWOFACTOR_RECURRENCE_HPP_

#ifndef TWOFACTOR_ENUMERATE_HPP_
#define TWOFACTOR_ENUMERATE_HPP_

// 2-factor counts on the thin cylinder C_m x P_n (tnc), the torus with twist p
// (tg) and the Klein bottle with twist p (kb).
//
// Three routes:
//   full     D_m:  tnc = a^(n+1)_{1,1}; tg/kb = sum of a^(n)_{ij} with
//                  v_i = rho^p(v_j), resp. conv(v_i) = rho^p(v_j)
//   reduced  D*_m: tnc = a^(n)_{1,1} on the 0^m component; tg/kb as above with
//                  reversal in place of horizontal conversion
//   glued    N**_m: tnc = a^(n)_{1,1}
//
// Both digraphs commute with rotation, so a^(n)_{rho^k v, rho^k w} = a^(n)_{v,w}
// and only one row per rotation orbit has to be carried along.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twofactor/alpha.hpp"
#include "twofactor/exactmat.hpp"
#include "twofactor/transfer.hpp"

namespace twofactor {

enum class Family { kTnC, kTG, kKB };
enum class Method { kFull, kReduced, kGlued };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::kTnC: return "tnc";
    case Family::kTG: return "tg";
    case Family::kKB: return "kb";
  }
  return "unknown";
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::kFull: return "full";
    case Method::kReduced: return "reduced";
    case Method::kGlued: return "glued";
  }
  return "unknown";
}

inline Family parse_family(std::string_view s) {
  if (s == "tnc" || s == "TnC") return Family::kTnC;
  if (s == "tg" || s == "TG") return Family::kTG;
  if (s == "kb" || s == "KB") return Family::kKB;
  throw std::invalid_argument("unknown family '" + std::string(s) + "' (expected tnc, tg or kb)");
}

inline Method parse_method(std::string_view s) {
  if (s == "full") return Method::kFull;
  if (s == "reduced") return Method::kReduced;
  if (s == "glued") return Method::kGlued;
  throw std::invalid_argument("unknown method '" + std::string(s) + "' (expected full, reduced or glued)");
}

// Widths each route accepts.
inline constexpr int kMaxFullRoute = 8;
inline constexpr int kMaxReducedRoute = 12;
inline constexpr int kMaxGluedRoute = 14;

// Direct matrix powers are used below this order; above it, row stepping.
inline constexpr std::size_t kMaxPowerOrder = 128;

struct GridSpec {
  Family family = Family::kTnC;
  int m = 2;
  int p = 0;
  long long n = 1;

  /// p reduced mod m; zero for tnc.
  GridSpec normalized() const {
    GridSpec out = *this;
    if (family == Family::kTnC || m < 1) {
      out.p = 0;
    } else {
      out.p = ((p % m) + m) % m;
    }
    return out;
  }

  void validate() const {
    if (m < 2) throw std::invalid_argument("width m must be >= 2, got " + std::to_string(m));
    if (n < 1) throw std::invalid_argument("length n must be >= 1, got " + std::to_string(n));
  }
};

struct Series {
  Family family = Family::kTnC;
  int m = 2;
  int p = 0;
  std::vector<BigInt> values;  // values[k] = f(k + 1)
};

namespace detail {

inline void check_route(Method method, int m) {
  if (m < 2) throw std::invalid_argument("width m must be >= 2, got " + std::to_string(m));
  const int limit = method == Method::kFull ? kMaxFullRoute
                    : method == Method::kReduced ? kMaxReducedRoute
                                                 : kMaxGluedRoute;
  if (m > limit) {
    throw LimitError(std::string(to_string(method)) + " route supports m <= " + std::to_string(limit) +
                     ", got " + std::to_string(m));
  }
}

inline int normalize_twist(int p, int m) { return ((p % m) + m) % m; }

struct Pick {
  std::uint32_t slot;    // which carried row
  std::uint32_t column;  // entry of that row
  std::uint32_t weight;
};

/// Rows e_start * T^k for several starts, and for each requested series the
/// weighted entries to add up.
struct Selection {
  std::vector<std::uint32_t> starts;
  std::vector<std::vector<Pick>> picks;  // one list per series
};

/// Steps every start row `last` times and records, for k in [first, last],
/// each series' selected sum after k steps.
template <typename Step>
std::vector<std::vector<BigInt>> run_selection(std::size_t order, const Selection& sel, long long first,
                                               long long last, Step step) {
  std::vector<std::vector<BigInt>> out(sel.picks.size());
  if (last < first) return out;
  std::vector<std::vector<BigInt>> rows(sel.starts.size(), std::vector<BigInt>(order));
  for (std::size_t s = 0; s < sel.starts.size(); ++s) rows[s][sel.starts[s]] = 1;
  for (auto& o : out) o.reserve(static_cast<std::size_t>(last - first + 1));
  for (long long k = 1; k <= last; ++k) {
    for (auto& row : rows) step(row);
    if (k < first) continue;
    for (std::size_t q = 0; q < sel.picks.size(); ++q) {
      BigInt total = 0;
      for (const Pick& pk : sel.picks[q]) {
        const BigInt& x = rows[pk.slot][pk.column];
        if (pk.weight == 1) {
          total += x;
        } else {
          mpz_addmul_ui(total.get_mpz_t(), x.get_mpz_t(), pk.weight);
        }
      }
      out[q].push_back(std::move(total));
    }
  }
  return out;
}

inline AlphaWord reflect_for_kb(const AlphaWord& w) { return horizontal_convert(w); }
inline BinaryWord reflect_for_kb(const BinaryWord& w) { return w.reverse(); }

/// One carried row per rotation orbit; picks for each (family, p) request.
/// tg: orbit of v contributes |orbit| * a_{v, rho^-p v}.
/// kb: with s(v) = rho^-p(conv v), member rho^k v contributes
///     a_{rho^k v, s(rho^k v)} = a_{v, rho^-2k s(v)}.
template <typename Vertex>
Selection twist_selection(const Digraph<Vertex>& d, std::span<const std::pair<Family, int>> requests) {
  Selection sel;
  sel.picks.resize(requests.size());
  std::vector<std::uint8_t> seen(d.order(), 0);
  for (std::size_t i = 0; i < d.order(); ++i) {
    if (seen[i]) continue;
    const Vertex& v = d.vertex(i);
    std::uint32_t orbit = 0;
    for (Vertex w = v;;) {
      seen[d.require_index(w)] = 1;
      ++orbit;
      w = rotate(w, 1);
      if (w == v) break;
    }
    const auto slot = static_cast<std::uint32_t>(sel.starts.size());
    sel.starts.push_back(static_cast<std::uint32_t>(i));
    for (std::size_t q = 0; q < requests.size(); ++q) {
      const auto [family, p] = requests[q];
      if (family == Family::kTG) {
        const auto col = static_cast<std::uint32_t>(d.require_index(rotate(v, -p)));
        sel.picks[q].push_back({slot, col, orbit});
      } else if (family == Family::kKB) {
        const Vertex s = rotate(reflect_for_kb(v), -p);
        for (std::uint32_t k = 0; k < orbit; ++k) {
          const auto col = static_cast<std::uint32_t>(d.require_index(rotate(s, -2LL * k)));
          sel.picks[q].push_back({slot, col, 1});
        }
      } else {
        throw std::invalid_argument("twist_selection is for tg and kb only");
      }
    }
  }
  return sel;
}

/// x <- x * T_m using the structure of D_m: T[v][u] = [outlet(v) = inlet(u)],
/// so (xT)_u is the sum of x_v over all v with outlet(v) = inlet(u).
class FullStep {
 public:
  explicit FullStep(const FullDigraph& d) : buckets_(std::size_t{1} << d.width()) {
    out_.reserve(d.order());
    in_.reserve(d.order());
    for (const AlphaWord& w : d.vertices()) {
      out_.push_back(outlet_code(w.letters()));
      in_.push_back(inlet_code(w.letters()));
    }
  }

  void operator()(std::vector<BigInt>& x) {
    for (auto& b : buckets_) b = 0;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (sgn(x[v]) != 0) buckets_[out_[v]] += x[v];
    for (std::size_t u = 0; u < x.size(); ++u) x[u] = buckets_[in_[u]];
  }

 private:
  std::vector<std::uint32_t> out_;
  std::vector<std::uint32_t> in_;
  std::vector<BigInt> buckets_;
};

template <typename Vertex>
auto adjacency_step(const Digraph<Vertex>& d) {
  return [&d](std::vector<BigInt>& x) { multiply_by_adjacency(x, d); };
}

inline std::vector<BigInt> tnc_values(Method method, int m, long long first, long long last) {
  check_route(method, m);
  Selection sel{{0}, {{Pick{0, 0, 1}}}};
  switch (method) {
    case Method::kFull: {
      const FullDigraph d = build_full(m);
      return run_selection(d.order(), sel, first + 1, last + 1, FullStep(d))[0];
    }
    case Method::kReduced: {
      const ReducedDigraph d = build_reduced_component(m);
      return run_selection(d.order(), sel, first, last, adjacency_step(d))[0];
    }
    case Method::kGlued: {
      const ReducedDigraph d = build_glued(m);
      return run_selection(d.order(), sel, first, last, adjacency_step(d))[0];
    }
  }
  throw std::logic_error("unreachable");
}

inline std::vector<std::vector<BigInt>> twist_values(Method method, int m,
                                                     std::span<const std::pair<Family, int>> requests,
                                                     long long first, long long last) {
  check_route(method, m);
  if (method == Method::kGlued) {
    throw std::invalid_argument("the glued route counts thin cylinders only");
  }
  if (method == Method::kFull) {
    const FullDigraph d = build_full(m);
    return run_selection(d.order(), twist_selection(d, requests), first, last, FullStep(d));
  }
  const ReducedDigraph d = build_reduced(m);
  return run_selection(d.order(), twist_selection(d, requests), first, last, adjacency_step(d));
}

}  // namespace detail

/// Index pairs (i, j) of D*_m whose entries of (T*)^n add up to the tg or kb
/// count: v_i = rho^p(v_j), resp. reverse(v_i) = rho^p(v_j).
inline std::vector<IndexPair> trace_pairs(const ReducedDigraph& d, Family family, int p) {
  if (d.kind() != DigraphKind::kReduced || d.order() != (std::size_t{1} << d.width())) {
    throw std::invalid_argument("trace_pairs needs the complete reduced digraph");
  }
  std::vector<IndexPair> pairs;
  pairs.reserve(d.order());
  for (std::size_t i = 0; i < d.order(); ++i) {
    const BinaryWord& v = d.vertex(i);
    BinaryWord target;
    if (family == Family::kTG) {
      target = v.rotate(-p);
    } else if (family == Family::kKB) {
      target = v.reverse().rotate(-p);
    } else {
      throw std::invalid_argument("trace_pairs is for tg and kb only");
    }
    pairs.push_back({i, d.require_index(target)});
  }
  return pairs;
}

/// Values f(1..N), one transfer step per term.
inline Series series(Family family, int m, int p, long long N, Method method = Method::kReduced) {
  if (N < 0) throw std::invalid_argument("number of terms must be >= 0");
  if (m < 2) throw std::invalid_argument("width m must be >= 2, got " + std::to_string(m));
  Series out{family, m, family == Family::kTnC ? 0 : detail::normalize_twist(p, m), {}};
  if (family == Family::kTnC) {
    detail::check_route(method, m);
    if (N > 0) out.values = detail::tnc_values(method, m, 1, N);
    return out;
  }
  const std::pair<Family, int> req[] = {{family, out.p}};
  detail::check_route(method, m);
  if (method == Method::kGlued) throw std::invalid_argument("the glued route counts thin cylinders only");
  if (N > 0) out.values = std::move(detail::twist_values(method, m, req, 1, N)[0]);
  return out;
}

/// tg or kb series for every twist p = 0..m-1, sharing the transfer steps.
inline std::vector<Series> series_all_twists(Family family, int m, long long N,
                                             Method method = Method::kReduced) {
  if (family == Family::kTnC) throw std::invalid_argument("tnc has no twist");
  if (N < 0) throw std::invalid_argument("number of terms must be >= 0");
  detail::check_route(method, m);
  std::vector<std::pair<Family, int>> req;
  for (int p = 0; p < m; ++p) req.emplace_back(family, p);
  std::vector<Series> out;
  auto values = N > 0 ? detail::twist_values(method, m, req, 1, N)
                      : std::vector<std::vector<BigInt>>(req.size());
  for (int p = 0; p < m; ++p) out.push_back({family, m, p, std::move(values[static_cast<std::size_t>(p)])});
  return out;
}

inline BigInt count_tnc(int m, long long n, Method method = Method::kReduced) {
  GridSpec{Family::kTnC, m, 0, n}.validate();
  detail::check_route(method, m);
  if (method != Method::kFull) {
    const ReducedDigraph d = method == Method::kGlued ? build_glued(m) : build_reduced_component(m);
    if (d.order() <= kMaxPowerOrder) {
      return mat_pow(CountMatrix::from_digraph(d), static_cast<unsigned long long>(n))(0, 0);
    }
  }
  return detail::tnc_values(method, m, n, n).at(0);
}

namespace detail {

inline BigInt count_twisted(Family family, int m, int p, long long n, Method method) {
  GridSpec{family, m, p, n}.validate();
  check_route(method, m);
  p = normalize_twist(p, m);
  if (method == Method::kReduced) {
    const ReducedDigraph d = build_reduced(m);
    if (d.order() <= kMaxPowerOrder) {
      const auto pairs = trace_pairs(d, family, p);
      return selected_trace(mat_pow(CountMatrix::from_digraph(d), static_cast<unsigned long long>(n)), pairs);
    }
  }
  const std::pair<Family, int> req[] = {{family, p}};
  return twist_values(method, m, req, n, n).at(0).at(0);
}

}  // namespace detail

inline BigInt count_tg(int m, int p, long long n, Method method = Method::kReduced) {
  return detail::count_twisted(Family::kTG, m, p, n, method);
}

inline BigInt count_kb(int m, int p, long long n, Method method = Method::kReduced) {
  return detail::count_twisted(Family::kKB, m, p, n, method);
}

inline BigInt count(const GridSpec& spec, Method method = Method::kReduced) {
  switch (spec.family) {
    case Family::kTnC: return count_tnc(spec.m, spec.n, method);
    case Family::kTG: return count_tg(spec.m, spec.p, spec.n, method);
    case Family::kKB: return count_kb(spec.m, spec.p, spec.n, method);
  }
  throw std::logic_error("unreachable");
}

/// Full-digraph and reduced-digraph routes agree on all three families for
/// n = 1..n_max (and, for tnc, the glued route too).
inline bool verify_lemma3_equivalence(int m, int p, long long n_max) {
  if (n_max < 1) return true;
  p = detail::normalize_twist(p, m);
  const auto tnc_full = series(Family::kTnC, m, 0, n_max, Method::kFull).values;
  if (tnc_full != series(Family::kTnC, m, 0, n_max, Method::kReduced).values) return false;
  if (m <= kMaxGluedRoute && tnc_full != series(Family::kTnC, m, 0, n_max, Method::kGlued).values) return false;
  for (Family f : {Family::kTG, Family::kKB}) {
    if (series(f, m, p, n_max, Method::kFull).values != series(f, m, p, n_max, Method::kReduced).values) {
      return false;
    }
  }
  return true;
}

/// Sum over first-column words v in F_m of a^(n)_{v,v} on D_m.
inline BigInt first_column_trace(int m, long long n) {
  detail::check_route(Method::kFull, m);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const FullDigraph d = build_full(m);
  detail::Selection sel;
  for (const AlphaWord& w : column_sets(m).first) {
    const auto i = static_cast<std::uint32_t>(d.require_index(w));
    sel.picks.push_back({{static_cast<std::uint32_t>(sel.starts.size()), i, 1}});
    sel.starts.push_back(i);
  }
  BigInt total = 0;
  for (const auto& v : detail::run_selection(d.order(), sel, n, n, detail::FullStep(d))) total += v.at(0);
  return total;
}

// ---------------------------------------------------------------------------
// Spectral estimates on the 0^m component of D*_m

inline Spectrum tnc_spectrum(int m, double tol = 1e-12) {
  detail::check_route(Method::kReduced, m);
  return dominant_eigenvalue(RealMatrix::from_digraph(build_reduced_component(m)), tol);
}

/// Dominant eigenvalue of every component of D*_m, indexed by component id.
inline std::vector<double> component_spectra(const ReducedDigraph& d, const ComponentCensus& census,
                                             double tol = 1e-12) {
  std::vector<double> out;
  for (std::size_t id = 0; id < census.count(); ++id) {
    const auto members = census.members(id);
    out.push_back(dominant_eigenvalue(RealMatrix::from_digraph(induced_subgraph(d, std::span(members))), tol).theta);
  }
  return out;
}

struct AmplitudeResult {
  double theta = 0.0;
  double value = 0.0;
  long long n = 0;          // last term used
  double last_change = 0.0;
};

/// a in f^tnc(n) ~ a theta^n. Estimates from a sliding window at n = 10, 20,
/// ... until two successive estimates agree to `rel_tol`.
inline AmplitudeResult amplitude_estimate_tnc(int m, double rel_tol = 1e-10, long long n_max = 4000) {
  detail::check_route(Method::kReduced, m);
  const ReducedDigraph d = build_reduced_component(m);
  AmplitudeResult out;
  out.theta = dominant_eigenvalue(RealMatrix::from_digraph(d)).theta;
  constexpr long long kStride = 10;
  std::vector<BigInt> row(d.order());
  row[0] = 1;
  std::vector<BigInt> values;
  std::optional<double> prev;
  for (long long n = 1; n <= n_max; ++n) {
    multiply_by_adjacency(row, d);
    values.push_back(row[0]);
    if (n % kStride != 0) continue;
    const double est = amplitude_estimate(values, out.theta);
    out.n = n;
    out.value = est;
    if (prev) {
      out.last_change = std::abs(est - *prev);
      if (out.last_change <= rel_tol * std::abs(est)) return out;
    }
    prev = est;
  }
  throw ConvergenceError("amplitude estimate for m=" + std::to_string(m) + " did not settle by n=" +
                         std::to_string(n_max));
}

}  // namespace twofactor

#endif  // TWOFACTOR_ENUMERATE_HPP_

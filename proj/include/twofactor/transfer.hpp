#ifndef TWOFACTOR_TRANSFER_HPP_
#define TWOFACTOR_TRANSFER_HPP_

// Transfer digraphs over column words.
//
//   full     vertices are column-valid alpha words; v -> u iff outlet(v) = inlet(u)
//   reduced  vertices are binary outlet words; the multiplicity of v -> w is the
//            number of column words with inlet v and outlet w (0, 1 or 2)
//   glued    the 0^m component of the reduced digraph with every vertex merged
//            with its rotations and reversals

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "twofactor/alpha.hpp"

namespace twofactor {

/// Raised when a request exceeds a documented size limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxFullWidth = 11;
inline constexpr int kMaxReducedWidth = 12;
inline constexpr int kMaxComponentWidth = 20;

enum class DigraphKind { kFull, kReduced, kGlued };

inline const char* to_string(DigraphKind kind) {
  switch (kind) {
    case DigraphKind::kFull: return "full";
    case DigraphKind::kReduced: return "reduced";
    case DigraphKind::kGlued: return "glued";
  }
  return "unknown";
}

struct Arc {
  std::uint32_t to;
  std::uint32_t multiplicity;
};

inline std::uint64_t vertex_key(const AlphaWord& w) { return w.key(); }
inline std::uint64_t vertex_key(const BinaryWord& w) { return w.code(); }

/// Immutable digraph with arc multiplicities, stored as compressed rows.
template <typename Vertex>
class Digraph {
 public:
  Digraph(DigraphKind kind, int width, std::vector<Vertex> vertices,
          const std::vector<std::vector<Arc>>& rows)
      : kind_(kind), width_(width), vertices_(std::move(vertices)) {
    if (rows.size() != vertices_.size()) {
      throw std::invalid_argument("digraph needs one arc row per vertex");
    }
    offsets_.reserve(rows.size() + 1);
    offsets_.push_back(0);
    for (const auto& row : rows) {
      std::vector<Arc> sorted = row;
      std::sort(sorted.begin(), sorted.end(), [](const Arc& x, const Arc& y) { return x.to < y.to; });
      for (const Arc& a : sorted) {
        if (a.to >= vertices_.size()) throw std::out_of_range("arc target out of range");
        if (a.multiplicity == 0) continue;
        if (!arcs_.empty() && arcs_.size() > offsets_.back() && arcs_.back().to == a.to) {
          arcs_.back().multiplicity += a.multiplicity;
        } else {
          arcs_.push_back(a);
        }
      }
      offsets_.push_back(arcs_.size());
    }
    index_.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (!index_.emplace(vertex_key(vertices_[i]), static_cast<std::uint32_t>(i)).second) {
        throw std::invalid_argument("duplicate vertex in digraph");
      }
    }
  }

  DigraphKind kind() const { return kind_; }
  int width() const { return width_; }
  std::size_t order() const { return vertices_.size(); }
  const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  std::span<const Arc> arcs(std::size_t i) const {
    return std::span<const Arc>(arcs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]);
  }

  std::uint32_t entry(std::size_t i, std::size_t j) const {
    const auto row = arcs(i);
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Arc& a, std::size_t t) { return a.to < t; });
    return (it != row.end() && it->to == j) ? it->multiplicity : 0;
  }

  /// Sum of all multiplicities.
  std::uint64_t arc_count() const {
    std::uint64_t total = 0;
    for (const Arc& a : arcs_) total += a.multiplicity;
    return total;
  }

  std::size_t distinct_arc_count() const { return arcs_.size(); }

  std::optional<std::size_t> index_of(const Vertex& v) const {
    auto it = index_.find(vertex_key(v));
    if (it == index_.end() || !(vertices_[it->second] == v)) return std::nullopt;
    return it->second;
  }

  std::size_t require_index(const Vertex& v) const {
    auto idx = index_of(v);
    if (!idx) throw std::out_of_range("vertex " + v.to_string() + " not in digraph");
    return *idx;
  }

  /// Row-major dense adjacency matrix.
  std::vector<std::uint32_t> dense() const {
    const std::size_t n = order();
    std::vector<std::uint32_t> out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (const Arc& a : arcs(i)) out[i * n + a.to] = a.multiplicity;
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < order(); ++i)
      for (const Arc& a : arcs(i))
        if (entry(a.to, i) != a.multiplicity) return false;
    return true;
  }

 private:
  DigraphKind kind_;
  int width_;
  std::vector<Vertex> vertices_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

using FullDigraph = Digraph<AlphaWord>;
using ReducedDigraph = Digraph<BinaryWord>;

/// Sub-digraph induced by `members`, in the given order.
template <typename Vertex>
Digraph<Vertex> induced_subgraph(const Digraph<Vertex>& d, std::span<const std::uint32_t> members) {
  std::vector<std::int64_t> local(d.order(), -1);
  std::vector<Vertex> vertices;
  vertices.reserve(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    local[members[k]] = static_cast<std::int64_t>(k);
    vertices.push_back(d.vertex(members[k]));
  }
  std::vector<std::vector<Arc>> rows(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (const Arc& a : d.arcs(members[k])) {
      if (local[a.to] >= 0) rows[k].push_back({static_cast<std::uint32_t>(local[a.to]), a.multiplicity});
    }
  }
  return Digraph<Vertex>(d.kind(), d.width(), std::move(vertices), rows);
}

// ---------------------------------------------------------------------------
// Construction

inline void check_width(int m, int limit, const char* what) {
  if (m < 1) throw std::invalid_argument(std::string(what) + ": width must be >= 1");
  if (m > limit) {
    throw LimitError(std::string(what) + ": width " + std::to_string(m) + " exceeds limit " +
                     std::to_string(limit));
  }
}

/// D_m. Vertex 0 is b^m; the rest follow in lexicographic order.
inline FullDigraph build_full(int m) {
  check_width(m, kMaxFullWidth, "build_full");
  std::vector<AlphaWord> words = enumerate_column_words(m);
  const AlphaWord bm = AlphaWord::repeat(letters::b, m);
  auto it = std::find(words.begin(), words.end(), bm);
  std::rotate(words.begin(), it, it + 1);

  const std::size_t n_codes = std::size_t{1} << m;
  std::vector<std::vector<std::uint32_t>> by_inlet(n_codes);
  std::vector<std::uint32_t> outlets(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    by_inlet[detail::inlet_code(words[i].letters())].push_back(static_cast<std::uint32_t>(i));
    outlets[i] = detail::outlet_code(words[i].letters());
  }
  std::vector<std::vector<Arc>> rows(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& succ = by_inlet[outlets[i]];
    rows[i].reserve(succ.size());
    for (std::uint32_t j : succ) rows[i].push_back({j, 1});
  }
  return FullDigraph(DigraphKind::kFull, m, std::move(words), rows);
}

/// D*_m over all 2^m binary words; vertex i is the word with code i, so 0^m
/// comes first and the rest are in lexicographic order.
inline ReducedDigraph build_reduced(int m) {
  check_width(m, kMaxReducedWidth, "build_reduced");
  const std::size_t n = std::size_t{1} << m;
  std::vector<std::uint8_t> counts(n * n, 0);
  for_each_column_word(m, [&](std::span<const AlphaLetter> w) {
    ++counts[detail::inlet_code(w) * n + detail::outlet_code(w)];
  });
  std::vector<BinaryWord> vertices;
  vertices.reserve(n);
  std::vector<std::vector<Arc>> rows(n);
  for (std::size_t v = 0; v < n; ++v) {
    vertices.emplace_back(m, static_cast<std::uint32_t>(v));
    for (std::size_t w = 0; w < n; ++w) {
      if (counts[v * n + w]) rows[v].push_back({static_cast<std::uint32_t>(w), counts[v * n + w]});
    }
  }
  return ReducedDigraph(DigraphKind::kReduced, m, std::move(vertices), rows);
}

/// Component of D*_m containing `seed`, built by search without materialising
/// the full 2^m vertex set. `seed` comes first; the rest are in lexicographic
/// order.
inline ReducedDigraph build_reduced_component(int m, std::optional<BinaryWord> seed = std::nullopt) {
  check_width(m, kMaxComponentWidth, "build_reduced_component");
  const BinaryWord start = seed.value_or(BinaryWord::zeros(m));
  if (start.size() != m) throw std::invalid_argument("seed width differs from m");

  std::map<std::uint32_t, std::map<std::uint32_t, std::uint32_t>> out_arcs;
  std::queue<std::uint32_t> frontier;
  out_arcs[start.code()];
  frontier.push(start.code());
  while (!frontier.empty()) {
    const std::uint32_t v = frontier.front();
    frontier.pop();
    std::map<std::uint32_t, std::uint32_t> row;
    for_each_outlet_with_inlet(BinaryWord(m, v), [&](std::uint32_t w) { ++row[w]; });
    for (const auto& [w, mult] : row) {
      if (out_arcs.find(w) == out_arcs.end()) {
        out_arcs[w];
        frontier.push(w);
      }
    }
    out_arcs[v] = std::move(row);
  }
  // The reduced adjacency is symmetric, so the forward closure is the whole
  // (weak) component.
  std::vector<std::uint32_t> codes;
  codes.push_back(start.code());
  for (const auto& [v, row] : out_arcs)
    if (v != start.code()) codes.push_back(v);
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  for (std::size_t k = 0; k < codes.size(); ++k) local[codes[k]] = static_cast<std::uint32_t>(k);

  std::vector<BinaryWord> vertices;
  std::vector<std::vector<Arc>> rows(codes.size());
  for (std::size_t k = 0; k < codes.size(); ++k) {
    vertices.emplace_back(m, codes[k]);
    for (const auto& [w, mult] : out_arcs[codes[k]]) rows[k].push_back({local.at(w), mult});
  }
  return ReducedDigraph(DigraphKind::kReduced, m, std::move(vertices), rows);
}

/// Lexicographically smallest word among all rotations of w and of its reversal.
inline BinaryWord dihedral_representative(const BinaryWord& w) {
  BinaryWord best = w;
  const BinaryWord r = w.reverse();
  for (int k = 0; k < w.size(); ++k) {
    best = std::min({best, w.rotate(k), r.rotate(k)});
  }
  return best;
}

/// N**_m: the 0^m component of D*_m with dihedral orbits merged. Row X uses the
/// arcs of the representative of X; column Y sums the multiplicities into all
/// members of Y. The orbit of 0^m comes first, the rest by representative.
inline ReducedDigraph build_glued(int m, const ReducedDigraph& n_star) {
  if (n_star.kind() != DigraphKind::kReduced || n_star.width() != m) {
    throw std::invalid_argument("build_glued expects the reduced 0^m component of the same width");
  }
  std::map<std::uint32_t, std::uint32_t> class_of_rep;  // rep code -> class id (provisional)
  std::vector<std::uint32_t> rep_codes;
  std::vector<std::uint32_t> member_class(n_star.order());
  for (std::size_t i = 0; i < n_star.order(); ++i) {
    const BinaryWord rep = dihedral_representative(n_star.vertex(i));
    if (!n_star.index_of(rep)) {
      throw std::logic_error("0^m component is not closed under rotation and reversal");
    }
    auto [it, inserted] = class_of_rep.emplace(rep.code(), 0);
    if (inserted) rep_codes.push_back(rep.code());
    (void)it;
  }
  // Orbit of 0^m first, then ascending representatives.
  std::sort(rep_codes.begin(), rep_codes.end());
  for (std::size_t k = 0; k < rep_codes.size(); ++k) class_of_rep[rep_codes[k]] = static_cast<std::uint32_t>(k);
  for (std::size_t i = 0; i < n_star.order(); ++i) {
    member_class[i] = class_of_rep.at(dihedral_representative(n_star.vertex(i)).code());
  }
  std::vector<BinaryWord> vertices;
  std::vector<std::vector<Arc>> rows(rep_codes.size());
  for (std::size_t k = 0; k < rep_codes.size(); ++k) {
    const BinaryWord rep(m, rep_codes[k]);
    vertices.push_back(rep);
    std::map<std::uint32_t, std::uint32_t> row;
    for (const Arc& a : n_star.arcs(n_star.require_index(rep))) row[member_class[a.to]] += a.multiplicity;
    for (const auto& [cls, mult] : row) rows[k].push_back({cls, mult});
  }
  return ReducedDigraph(DigraphKind::kGlued, m, std::move(vertices), rows);
}

inline ReducedDigraph build_glued(int m) {
  check_width(m, kMaxComponentWidth, "build_glued");
  return build_glued(m, build_reduced_component(m));
}

/// First and last column sets of a thin cylinder code matrix.
struct ColumnSets {
  std::vector<AlphaWord> first;  // letters from {a,b,c}: nothing enters from the left
  std::vector<AlphaWord> last;   // letters from {b,d,f}: nothing leaves to the right
};

inline ColumnSets column_sets(int m) {
  constexpr LetterSet kNoLeft = (1U << 0) | (1U << 1) | (1U << 2);
  constexpr LetterSet kNoRight = (1U << 1) | (1U << 3) | (1U << 5);
  return {enumerate_column_words(m, kNoLeft), enumerate_column_words(m, kNoRight)};
}

/// L_1 = 1, L_2 = 3, L_k = L_{k-1} + L_{k-2}.
inline std::uint64_t lucas(int k) {
  if (k < 1) throw std::invalid_argument("lucas index must be >= 1");
  std::uint64_t prev = 2, cur = 1;  // L_0, L_1
  for (int i = 1; i < k; ++i) {
    const std::uint64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Vertex relations

enum class RelationFlavor { kRotation, kHConversion };

/// A 0/1 permutation matrix over a digraph's vertex order, stored as the image
/// of each row: entry (i, image[i]) is 1.
struct VertexRelation {
  RelationFlavor flavor;
  std::vector<std::uint32_t> image;

  std::size_t order() const { return image.size(); }

  std::vector<std::uint8_t> dense() const {
    const std::size_t n = order();
    std::vector<std::uint8_t> out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) out[i * n + image[i]] = 1;
    return out;
  }

  /// Matrix power; for a permutation matrix this is repeated composition.
  VertexRelation power(long long p) const {
    if (p < 0) throw std::invalid_argument("relation power must be >= 0");
    VertexRelation out{flavor, std::vector<std::uint32_t>(order())};
    std::iota(out.image.begin(), out.image.end(), 0U);
    for (long long k = 0; k < p; ++k)
      for (auto& j : out.image) j = image[j];
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < order(); ++i)
      if (image[i] != i) return false;
    return true;
  }

  bool is_involution() const {
    for (std::size_t i = 0; i < order(); ++i)
      if (image[image[i]] != i) return false;
    return true;
  }
};

namespace detail {

inline AlphaWord reflect(const AlphaWord& w) { return horizontal_convert(w); }
inline BinaryWord reflect(const BinaryWord& w) { return w.reverse(); }

template <typename Vertex, typename Fn>
VertexRelation make_relation(const Digraph<Vertex>& d, RelationFlavor flavor, Fn fn) {
  if (d.kind() == DigraphKind::kGlued) {
    throw std::invalid_argument("vertex relations are defined on full and reduced digraphs only");
  }
  VertexRelation rel{flavor, std::vector<std::uint32_t>(d.order())};
  for (std::size_t i = 0; i < d.order(); ++i) {
    rel.image[i] = static_cast<std::uint32_t>(d.require_index(fn(d.vertex(i))));
  }
  return rel;
}

}  // namespace detail

/// r_ij = 1 iff rho(v_i) = v_j.
template <typename Vertex>
VertexRelation rotation_matrix(const Digraph<Vertex>& d) {
  return detail::make_relation(d, RelationFlavor::kRotation,
                               [](const Vertex& v) { return rotate(v, 1); });
}

/// h_ij = 1 iff v_i is the horizontal conversion (reversal) of v_j.
template <typename Vertex>
VertexRelation hconversion_matrix(const Digraph<Vertex>& d) {
  return detail::make_relation(d, RelationFlavor::kHConversion,
                               [](const Vertex& v) { return detail::reflect(v); });
}

// ---------------------------------------------------------------------------
// Components

struct ComponentCensus {
  std::vector<std::uint32_t> labels;  // component id per vertex
  std::vector<std::size_t> sizes;     // vertex count per component id
  std::optional<std::size_t> n_component;  // contains b^m (full) or 0^m (reduced)
  std::optional<std::size_t> a_component;  // contains e^m (full) or 1^m (reduced)
  std::vector<std::size_t> b_components;   // the others, largest first

  std::size_t count() const { return sizes.size(); }

  std::vector<std::uint32_t> members(std::size_t id) const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == id) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }
};

namespace detail {

inline std::optional<AlphaWord> n_marker(const FullDigraph& d) { return AlphaWord::repeat(letters::b, d.width()); }
inline std::optional<AlphaWord> a_marker(const FullDigraph& d) { return AlphaWord::repeat(letters::e, d.width()); }
inline std::optional<BinaryWord> n_marker(const ReducedDigraph& d) { return BinaryWord::zeros(d.width()); }
inline std::optional<BinaryWord> a_marker(const ReducedDigraph& d) { return BinaryWord::ones(d.width()); }

inline std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace detail

/// Weak components, each verified to be strongly connected. A component that
/// is not strongly connected raises std::logic_error.
template <typename Vertex>
ComponentCensus components(const Digraph<Vertex>& d) {
  const std::size_t n = d.order();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0U);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Arc& a : d.arcs(i)) {
      const auto ri = detail::find_root(parent, static_cast<std::uint32_t>(i));
      const auto rj = detail::find_root(parent, a.to);
      if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
    }
  }
  ComponentCensus census;
  census.labels.assign(n, 0);
  std::unordered_map<std::uint32_t, std::uint32_t> id_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = detail::find_root(parent, static_cast<std::uint32_t>(i));
    auto [it, inserted] = id_of_root.emplace(root, static_cast<std::uint32_t>(census.sizes.size()));
    if (inserted) census.sizes.push_back(0);
    census.labels[i] = it->second;
    ++census.sizes[it->second];
  }

  // Strong connectivity: everything in a component is reachable from its
  // first vertex both forwards and backwards.
  std::vector<std::vector<std::uint32_t>> reverse(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const Arc& a : d.arcs(i)) reverse[a.to].push_back(static_cast<std::uint32_t>(i));
  std::vector<std::uint8_t> seen_fwd(n, 0), seen_bwd(n, 0);
  std::vector<std::size_t> reached(census.count() * 2, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen_fwd[s]) continue;
    const std::uint32_t id = census.labels[s];
    std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(s)};
    seen_fwd[s] = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      ++reached[2 * id];
      for (const Arc& a : d.arcs(v))
        if (!seen_fwd[a.to]) seen_fwd[a.to] = 1, stack.push_back(a.to);
    }
    stack.push_back(static_cast<std::uint32_t>(s));
    seen_bwd[s] = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      ++reached[2 * id + 1];
      for (auto u : reverse[v])
        if (!seen_bwd[u]) seen_bwd[u] = 1, stack.push_back(u);
    }
    if (reached[2 * id] != census.sizes[id] || reached[2 * id + 1] != census.sizes[id]) {
      throw std::logic_error("component containing " + d.vertex(s).to_string() +
                             " is not strongly connected");
    }
  }

  if (d.kind() != DigraphKind::kGlued) {
    if (auto v = detail::n_marker(d); v && d.index_of(*v)) census.n_component = census.labels[*d.index_of(*v)];
    if (auto v = detail::a_marker(d); v && d.index_of(*v)) census.a_component = census.labels[*d.index_of(*v)];
  } else {
    census.n_component = census.labels[0];
  }
  // Component ids follow the first member's vertex index, so sorting ids on
  // ties orders by smallest member.
  for (std::size_t id = 0; id < census.count(); ++id) {
    if (id == census.n_component || id == census.a_component) continue;
    census.b_components.push_back(id);
  }
  std::stable_sort(census.b_components.begin(), census.b_components.end(),
                   [&](std::size_t x, std::size_t y) { return census.sizes[x] > census.sizes[y]; });
  return census;
}

}  // namespace twofactor

#endif  // TWOFACTOR_TRANSFER_HPP_

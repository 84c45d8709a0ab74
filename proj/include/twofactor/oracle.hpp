#ifndef TWOFACTOR_ORACLE_HPP_
#define TWOFACTOR_ORACLE_HPP_

// Brute-force 2-factor counter on explicitly built grid multigraphs. Shares no
// code with the transfer machinery beyond the GridSpec type.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twofactor/enumerate.hpp"

namespace twofactor {

inline constexpr std::size_t kMaxOracleEdges = 48;

/// Undirected multigraph; parallel edges are separate entries.
struct Multigraph {
  int rows = 0;  // m
  int cols = 0;  // n
  std::vector<std::pair<int, int>> edges;

  int vertex_count() const { return rows * cols; }

  /// (i, j), 1-based row and column.
  int id(int i, int j) const { return (j - 1) * rows + (i - 1); }
  std::pair<int, int> label(int v) const { return {v % rows + 1, v / rows + 1}; }

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(vertex_count()), 0);
    for (auto [u, v] : edges) ++deg[static_cast<std::size_t>(u)], ++deg[static_cast<std::size_t>(v)];
    return deg;
  }

  /// "u v" per edge, parallel edges repeated.
  std::string to_edge_list() const {
    std::ostringstream out;
    out << "# vertices " << vertex_count() << " edges " << edges.size() << "\n";
    for (auto [u, v] : edges) out << u << " " << v << "\n";
    return out.str();
  }
};

/// Row i of column j is vertex (i, j). Columns are m-cycles (two parallel
/// edges when m = 2); consecutive columns are joined row by row. Torus: row i
/// of column 1 meets row i+p of column n. Klein bottle: row i of column 1
/// meets row m+p+1-i of column n. Row indices wrap mod m.
inline Multigraph build_grid(const GridSpec& raw) {
  const GridSpec spec = raw.normalized();
  spec.validate();
  if (spec.family != Family::kTnC && spec.n < 2) {
    throw std::invalid_argument("torus and Klein bottle grids need n >= 2");
  }
  Multigraph g;
  g.rows = spec.m;
  g.cols = static_cast<int>(spec.n);
  const int m = spec.m;
  auto wrap = [m](int i) { return ((i - 1) % m + m) % m + 1; };
  for (int j = 1; j <= g.cols; ++j)
    for (int i = 1; i <= m; ++i) g.edges.emplace_back(g.id(i, j), g.id(wrap(i + 1), j));
  for (int j = 1; j < g.cols; ++j)
    for (int i = 1; i <= m; ++i) g.edges.emplace_back(g.id(i, j), g.id(i, j + 1));
  for (int i = 1; i <= m && spec.family != Family::kTnC; ++i) {
    const int partner = spec.family == Family::kTG ? wrap(i + spec.p) : wrap(m + spec.p + 1 - i);
    g.edges.emplace_back(g.id(partner, g.cols), g.id(i, 1));
  }
  return g;
}

/// Number of spanning subgraphs in which every vertex has degree exactly 2.
inline BigInt count_two_factors(const Multigraph& g) {
  if (g.edges.size() > kMaxOracleEdges) {
    throw LimitError("count_two_factors: " + std::to_string(g.edges.size()) + " edges exceeds the limit of " +
                     std::to_string(kMaxOracleEdges));
  }
  const int nv = g.vertex_count();
  if (nv == 0) return 1;
  // Edges grouped by their lower endpoint; a vertex is settled once the group
  // of every edge touching it has been passed.
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : g.edges) edges.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(edges.begin(), edges.end());
  std::vector<int> last_use(static_cast<std::size_t>(nv), -1);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    last_use[static_cast<std::size_t>(edges[e].first)] = e;
    last_use[static_cast<std::size_t>(edges[e].second)] = std::max(last_use[static_cast<std::size_t>(edges[e].second)], e);
  }
  for (int v = 0; v < nv; ++v)
    if (last_use[static_cast<std::size_t>(v)] < 0) return 0;  // isolated vertex
  // Vertices whose last incident edge is e, checked right after deciding e.
  std::vector<std::vector<int>> settle(edges.size());
  for (int v = 0; v < nv; ++v) settle[static_cast<std::size_t>(last_use[static_cast<std::size_t>(v)])].push_back(v);
  std::vector<int> remaining = g.degrees();
  std::vector<int> deg(static_cast<std::size_t>(nv), 0);

  std::uint64_t found = 0;
  auto recurse = [&](auto&& self, std::size_t e) -> void {
    if (e == edges.size()) {
      ++found;
      return;
    }
    const auto [u, v] = edges[e];
    auto& du = deg[static_cast<std::size_t>(u)];
    auto& dv = deg[static_cast<std::size_t>(v)];
    --remaining[static_cast<std::size_t>(u)];
    --remaining[static_cast<std::size_t>(v)];
    auto feasible = [&](int x) {
      const auto i = static_cast<std::size_t>(x);
      return deg[i] <= 2 && deg[i] + remaining[i] >= 2;
    };
    auto settled = [&] {
      for (int x : settle[e])
        if (deg[static_cast<std::size_t>(x)] != 2) return false;
      return true;
    };
    // take the edge
    ++du, ++dv;
    if (feasible(u) && feasible(v) && settled()) self(self, e + 1);
    --du, --dv;
    // skip it
    if (feasible(u) && feasible(v) && settled()) self(self, e + 1);
    ++remaining[static_cast<std::size_t>(u)];
    ++remaining[static_cast<std::size_t>(v)];
  };
  recurse(recurse, 0);
  return BigInt(static_cast<unsigned long>(found));
}

}  // namespace twofactor

#endif  // TWOFACTOR_ORACLE_HPP_

#pragma once

// Rank-3 coset geometries Gamma(H, (H0, H1, H2)) with H_i = <a_j, a_k>.
//
// Two independent deciders are provided. The criteria path works on the
// three dihedral subgroups only (intersections and set products); the graph
// oracle materializes H, the typed cosets and the incidence graph and checks
// thinness, residual connectedness and flag-transitivity from definitions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pglhyp/error.hpp"
#include "pglhyp/group.hpp"
#include "pglhyp/perspectivity.hpp"

namespace pglhyp {

/// `indices` holds types (criteria path) or a flag as [type, idx, type, idx]
/// (oracle); `size` is the offending intersection or residue size.
struct Witness {
  std::string criterion;
  std::vector<std::uint32_t> indices;
  std::size_t size = 0;
  bool operator==(const Witness&) const = default;
};

struct CriteriaReport {
  bool thin = false;
  bool residually_connected = false;
  bool flag_transitive = false;
  std::vector<Witness> witnesses;

  bool hypertope() const noexcept { return thin && residually_connected && flag_transitive; }
  bool same_verdicts(const CriteriaReport& o) const noexcept {
    return thin == o.thin && residually_connected == o.residually_connected && flag_transitive == o.flag_transitive;
  }
};

using Generators = std::array<Projectivity, 3>;

/// H_i = <a_j, a_k> with j < k.
inline std::array<ElementSet, 3> rank2_subgroups(const Field& f, const Generators& a,
                                                 std::size_t budget = kDefaultBudget) {
  return {closure(f, {a[1], a[2]}, budget), closure(f, {a[0], a[2]}, budget), closure(f, {a[0], a[1]}, budget)};
}

/// Group-theoretic criteria on precomputed H_i.
inline CriteriaReport criteria_from_subgroups(const Field& f, const Generators& a,
                                              const std::array<const ElementSet*, 3>& h) {
  CriteriaReport r;
  r.thin = true;
  r.flag_transitive = true;
  r.residually_connected = true;
  const Projectivity e = proj::identity(f);

  std::array<std::array<std::optional<ElementSet>, 3>, 3> meet;
  for (std::uint32_t i = 0; i < 3; ++i) {
    for (std::uint32_t j = 0; j < 3; ++j) {
      if (i != j) meet[i][j] = intersect(*h[i], *h[j]);
    }
  }

  // Thin: H_i cap H_j = {e, a_k}.
  for (std::uint32_t i = 0; i < 3; ++i) {
    for (std::uint32_t j = i + 1; j < 3; ++j) {
      const std::uint32_t k = 3 - i - j;
      const ElementSet& m = *meet[i][j];
      if (!(m.size() == 2 && m.contains(e) && m.contains(a[k]))) {
        r.thin = false;
        r.witnesses.push_back({"thin", {i, j}, m.size()});
      }
    }
  }

  // (H_i cap H_j)(H_i cap H_k) = H_i cap (H_j H_k), every ordered triple.
  const std::array<std::array<std::uint32_t, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& [i, j, k] : perms) {
    const ElementSet lhs = set_product(f, *meet[i][j], *meet[i][k]);
    const ElementSet rhs = intersect(*h[i], set_product(f, *h[j], *h[k]));
    if (!lhs.same_elements(rhs)) {
      r.flag_transitive = false;
      r.witnesses.push_back({"flag_transitive", {i, j, k}, rhs.size()});
    }
  }

  // The intersection test decides thinness only for flag-transitive
  // geometries, so without flag-transitivity thinness is not established.
  if (r.thin && !r.flag_transitive) {
    r.thin = false;
    r.witnesses.push_back({"thin", {}, 0});
  }

  // H_i = <H_i cap H_j, H_i cap H_k>; the J = {} condition holds because
  // H is generated by the a_i by definition.
  for (std::uint32_t i = 0; i < 3; ++i) {
    const std::uint32_t j = (i + 1) % 3, k = (i + 2) % 3;
    std::vector<Projectivity> gens(meet[i][j]->begin(), meet[i][j]->end());
    gens.insert(gens.end(), meet[i][k]->begin(), meet[i][k]->end());
    const ElementSet sub = closure(f, gens, h[i]->size());
    if (sub.size() != h[i]->size()) {
      r.residually_connected = false;
      r.witnesses.push_back({"residually_connected", {i}, sub.size()});
    }
  }
  return r;
}

inline CriteriaReport check_hypertope_criteria(const Field& f, const Involution& a0, const Involution& a1,
                                               const Involution& a2, std::size_t budget = kDefaultBudget) {
  const Generators a{a0.map, a1.map, a2.map};
  const std::array<ElementSet, 3> h = rank2_subgroups(f, a, budget);
  return criteria_from_subgroups(f, a, {&h[0], &h[1], &h[2]});
}

/// Elements of type i are the right cosets H_i g, numbered by their least
/// element index in H. Cosets of different types are incident when they meet.
struct CosetGeometry {
  std::size_t group_order = 0;
  std::array<std::vector<std::vector<std::uint32_t>>, 3> cosets;
  std::array<std::vector<std::uint32_t>, 3> coset_of;
  /// adj[s][t][x] = sorted type-t neighbours of the type-s element x.
  std::array<std::array<std::vector<std::vector<std::uint32_t>>, 3>, 3> adj;

  std::size_t count(unsigned type) const { return cosets[type].size(); }

  bool incident(unsigned s, std::uint32_t x, unsigned t, std::uint32_t y) const {
    if (s == t) return false;
    const auto& v = adj[s][t][x];
    return std::binary_search(v.begin(), v.end(), y);
  }

  /// Incident pairs as [type, idx, type, idx] with the first type smaller.
  std::vector<std::array<std::uint32_t, 4>> incidence() const {
    std::vector<std::array<std::uint32_t, 4>> out;
    for (std::uint32_t s = 0; s < 3; ++s) {
      for (std::uint32_t t = s + 1; t < 3; ++t) {
        for (std::uint32_t x = 0; x < count(s); ++x) {
          for (std::uint32_t y : adj[s][t][x]) out.push_back({s, x, t, y});
        }
      }
    }
    return out;
  }
};

inline CosetGeometry build_coset_geometry(const Field& f, const ElementSet& h,
                                          const std::array<const ElementSet*, 3>& sub) {
  CosetGeometry g;
  g.group_order = h.size();
  for (unsigned t = 0; t < 3; ++t) {
    for (const Projectivity& x : *sub[t]) {
      if (!h.contains(x)) throw Error(ErrorKind::SubgroupNotContained, "H_" + std::to_string(t) + " is not inside H");
    }
    constexpr std::uint32_t unset = UINT32_MAX;
    g.coset_of[t].assign(h.size(), unset);
    for (std::uint32_t e = 0; e < h.size(); ++e) {
      if (g.coset_of[t][e] != unset) continue;
      const auto c = static_cast<std::uint32_t>(g.cosets[t].size());
      std::vector<std::uint32_t> members;
      members.reserve(sub[t]->size());
      for (const Projectivity& x : *sub[t]) {
        const std::uint32_t m = static_cast<std::uint32_t>(*h.index_of(proj::mul(f, x, h[e])));
        g.coset_of[t][m] = c;
        members.push_back(m);
      }
      std::sort(members.begin(), members.end());
      g.cosets[t].push_back(std::move(members));
    }
  }
  for (unsigned s = 0; s < 3; ++s) {
    for (unsigned t = 0; t < 3; ++t) {
      if (s == t) continue;
      g.adj[s][t].assign(g.count(s), {});
      for (std::uint32_t e = 0; e < h.size(); ++e) g.adj[s][t][g.coset_of[s][e]].push_back(g.coset_of[t][e]);
      for (auto& v : g.adj[s][t]) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
    }
  }
  return g;
}

namespace detail {

struct Vertex {
  unsigned type;
  std::uint32_t idx;
};

/// Connectivity of the subgraph induced on the given vertices.
inline bool induced_connected(const CosetGeometry& g, const std::vector<Vertex>& vs) {
  if (vs.size() <= 1) return true;
  std::vector<char> seen(vs.size(), 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w = 0; w < vs.size(); ++w) {
      if (!seen[w] && g.incident(vs[u].type, vs[u].idx, vs[w].type, vs[w].idx)) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == vs.size();
}

inline bool whole_graph_connected(const CosetGeometry& g) {
  std::array<std::vector<char>, 3> seen;
  for (unsigned t = 0; t < 3; ++t) seen[t].assign(g.count(t), 0);
  std::deque<Vertex> queue{{0, 0}};
  seen[0][0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (unsigned t = 0; t < 3; ++t) {
      if (t == u.type) continue;
      for (std::uint32_t w : g.adj[u.type][t][u.idx]) {
        if (!seen[t][w]) {
          seen[t][w] = 1;
          ++reached;
          queue.push_back({t, w});
        }
      }
    }
  }
  return reached == g.count(0) + g.count(1) + g.count(2);
}

}  // namespace detail

struct OracleReport {
  CriteriaReport verdicts;
  std::size_t chambers = 0;
  std::size_t base_orbit = 0;
  /// Smallest and largest rank-1 residue sizes over all flags of corank 1.
  std::size_t min_residue = 0;
  std::size_t max_residue = 0;
};

/// Decides the three properties from the incidence graph alone.
inline OracleReport graph_oracle(const CosetGeometry& g) {
  OracleReport out;
  CriteriaReport& r = out.verdicts;
  r.thin = true;
  out.min_residue = SIZE_MAX;

  // Rank-1 residues: type-k elements incident to both members of a flag {x, y}.
  for (std::uint32_t s = 0; s < 3; ++s) {
    for (std::uint32_t t = s + 1; t < 3; ++t) {
      const std::uint32_t k = 3 - s - t;
      for (std::uint32_t x = 0; x < g.count(s); ++x) {
        for (std::uint32_t y : g.adj[s][t][x]) {
          const auto& a = g.adj[s][k][x];
          const auto& b = g.adj[t][k][y];
          std::size_t common = 0;
          for (std::uint32_t z : a) common += std::binary_search(b.begin(), b.end(), z) ? 1 : 0;
          out.min_residue = std::min(out.min_residue, common);
          out.max_residue = std::max(out.max_residue, common);
          if (common != 2 && r.thin) {
            r.thin = false;
            r.witnesses.push_back({"thin", {s, x, t, y}, common});
          }
        }
      }
    }
  }
  if (out.min_residue == SIZE_MAX) out.min_residue = 0;

  // Residual connectedness: the whole graph and the residue of every element.
  r.residually_connected = detail::whole_graph_connected(g);
  if (!r.residually_connected) r.witnesses.push_back({"residually_connected", {}, 0});
  for (std::uint32_t t = 0; t < 3 && r.residually_connected; ++t) {
    for (std::uint32_t x = 0; x < g.count(t); ++x) {
      std::vector<detail::Vertex> vs;
      for (unsigned u = 0; u < 3; ++u) {
        if (u == t) continue;
        for (std::uint32_t w : g.adj[t][u][x]) vs.push_back({u, w});
      }
      if (!detail::induced_connected(g, vs)) {
        r.residually_connected = false;
        r.witnesses.push_back({"residually_connected", {t, x}, vs.size()});
        break;
      }
    }
  }

  // Chambers: pairwise incident triples. The base chamber's orbit under right
  // translation is the set of triples (H_0 h, H_1 h, H_2 h).
  for (std::uint32_t x = 0; x < g.count(0); ++x) {
    for (std::uint32_t y : g.adj[0][1][x]) {
      const auto& a = g.adj[0][2][x];
      const auto& b = g.adj[1][2][y];
      for (std::uint32_t z : a) out.chambers += std::binary_search(b.begin(), b.end(), z) ? 1 : 0;
    }
  }
  std::vector<std::array<std::uint32_t, 3>> orbit;
  orbit.reserve(g.group_order);
  for (std::uint32_t e = 0; e < g.group_order; ++e) {
    orbit.push_back({g.coset_of[0][e], g.coset_of[1][e], g.coset_of[2][e]});
  }
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  out.base_orbit = orbit.size();
  r.flag_transitive = out.chambers == out.base_orbit;
  if (!r.flag_transitive) r.witnesses.push_back({"flag_transitive", {}, out.chambers});
  return out;
}

/// (d_P, g, d_L) of a rank-2 residue; nullopt entries mean infinite
/// (disconnected residue, or no circuit for the gonality).
struct ResidueParams {
  std::optional<unsigned> d_points;
  std::optional<unsigned> gonality;
  std::optional<unsigned> d_lines;
  bool operator==(const ResidueParams&) const = default;
};

struct DiagramReport {
  /// labels[k] = order of a_i a_j for {i, j, k} = {0, 1, 2}.
  std::array<unsigned, 3> labels{};
  std::array<std::optional<ResidueParams>, 3> residues;
  std::array<std::size_t, 3> element_counts{};
  bool linear = false;
};

namespace detail {

/// Bipartite graph with `np` points then `nl` lines.
inline ResidueParams bipartite_params(std::size_t np, std::size_t nl,
                                      const std::vector<std::vector<std::uint32_t>>& nbrs) {
  const std::size_t n = np + nl;
  ResidueParams rp;
  unsigned girth = UINT32_MAX;
  bool connected = true;
  std::array<unsigned, 2> ecc{0, 0};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::uint32_t w : nbrs[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = static_cast<int>(u);
          queue.push_back(w);
        } else if (parent[u] != static_cast<int>(w)) {
          girth = std::min<unsigned>(girth, static_cast<unsigned>(dist[u] + dist[w] + 1));
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] < 0) {
        connected = false;
      } else {
        unsigned& e = ecc[s < np ? 0 : 1];
        e = std::max(e, static_cast<unsigned>(dist[v]));
      }
    }
  }
  if (connected) {
    rp.d_points = ecc[0];
    rp.d_lines = ecc[1];
  }
  if (girth != UINT32_MAX) rp.gonality = girth / 2;
  return rp;
}

}  // namespace detail

/// Residue of the base element of type k (the coset H_k itself), as a
/// bipartite graph between its type-i and type-j elements, i < j.
inline ResidueParams residue_params(const CosetGeometry& g, unsigned k) {
  const unsigned i = k == 0 ? 1 : 0;
  const unsigned j = k == 2 ? 1 : 2;
  const auto& pts = g.adj[k][i][0];
  const auto& lns = g.adj[k][j][0];
  std::vector<std::vector<std::uint32_t>> nbrs(pts.size() + lns.size());
  for (std::uint32_t a = 0; a < pts.size(); ++a) {
    for (std::uint32_t b = 0; b < lns.size(); ++b) {
      if (g.incident(i, pts[a], j, lns[b])) {
        nbrs[a].push_back(static_cast<std::uint32_t>(pts.size() + b));
        nbrs[pts.size() + b].push_back(a);
      }
    }
  }
  return detail::bipartite_params(pts.size(), lns.size(), nbrs);
}

inline DiagramReport diagram(const Field& f, const Generators& a, const CosetGeometry* g = nullptr) {
  DiagramReport d;
  for (unsigned k = 0; k < 3; ++k) {
    const unsigned i = k == 0 ? 1 : 0;
    const unsigned j = k == 2 ? 1 : 2;
    d.labels[k] = proj::order(f, proj::mul(f, a[i], a[j]));
    d.linear = d.linear || d.labels[k] == 2;
    if (g != nullptr) {
      d.residues[k] = residue_params(*g, k);
      d.element_counts[k] = g->count(k);
    }
  }
  return d;
}

}  // namespace pglhyp

#pragma once

// Dimension-1 divisor theory: q-reduced forms via Dhar's burning algorithm,
// Baker-Norine rank by enumeration over effective divisors, and h^0 both
// through rank and through the direct smallest-non-coverable-point-set
// search on subdivisions.
//
// Chip counts use plain integers: all quantities here stay tiny (degree at
// most a few dozen, graphs at most a few dozen vertices).

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tropx/divisor_types.hpp"
#include "tropx/subdivision.hpp"
#include "tropx/tropical_complex.hpp"

namespace tropx {

struct Disconnected : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SinglePointComplex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> incident;  // edge indices per vertex
  std::vector<int> degree;

  static Multigraph from_edges(int n, std::vector<std::pair<int, int>> e) {
    Multigraph g;
    g.vertex_count = n;
    g.edges = std::move(e);
    g.incident.resize(n);
    g.degree.assign(n, 0);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      auto [a, b] = g.edges[i];
      g.incident[a].push_back(static_cast<int>(i));
      g.incident[b].push_back(static_cast<int>(i));
      ++g.degree[a];
      ++g.degree[b];
    }
    return g;
  }

  static Multigraph from_complex(const WeakTropicalComplex& w) {
    if (w.dimension() != 1) throw std::invalid_argument("not a 1-dimensional complex");
    std::vector<std::pair<int, int>> e;
    const DeltaComplex& dc = w.complex();
    for (std::size_t i = 0; i < dc.count(1); ++i) {
      const auto& v = dc.simplex(1, static_cast<int>(i)).vertices;
      e.push_back({v[0], v[1]});
    }
    return from_edges(static_cast<int>(dc.count(0)), std::move(e));
  }

  int other_end(int edge, int v) const {
    return edges[edge].first == v ? edges[edge].second : edges[edge].first;
  }

  bool connected() const {
    if (vertex_count == 0) return false;
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : incident[v]) {
        int w = other_end(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == vertex_count;
  }

  std::vector<int> bfs_distances(int from) const {
    std::vector<int> dist(vertex_count, -1);
    std::vector<int> queue{from};
    dist[from] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int e : incident[v]) {
        int w = other_end(e, v);
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }
};

using Chips = std::vector<long long>;

inline long long chips_degree(const Chips& d) {
  long long s = 0;
  for (long long c : d) s += c;
  return s;
}

struct QReduction {
  Chips reduced;
  Chips firing;  // sigma with reduced = input - L * sigma
};

namespace detail {

// Dhar burning from q on a configuration that is >= 0 off q. Returns the
// unburnt set (empty iff the configuration is q-reduced).
inline std::vector<int> dhar_unburnt(const Multigraph& g, const Chips& c, int q) {
  std::vector<char> burnt(g.vertex_count, 0);
  burnt[q] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int v = 0; v < g.vertex_count; ++v) {
      if (burnt[v]) continue;
      long long incoming = 0;
      for (int e : g.incident[v])
        if (burnt[g.other_end(e, v)]) ++incoming;
      if (incoming > c[v]) {
        burnt[v] = 1;
        grew = true;
      }
    }
  }
  std::vector<int> unburnt;
  for (int v = 0; v < g.vertex_count; ++v)
    if (!burnt[v]) unburnt.push_back(v);
  return unburnt;
}

}  // namespace detail

// q-reduced representative of the divisor class: non-negative off q, and no
// subset of V \ {q} can fire without going negative. The firing certificate
// makes the equivalence re-verifiable through the Laplacian.
inline QReduction q_reduce(const Multigraph& g, const Chips& d, int q) {
  if (!g.connected()) throw Disconnected("q_reduce needs a connected graph");
  if (static_cast<int>(d.size()) != g.vertex_count)
    throw std::invalid_argument("chip vector size mismatch");
  QReduction out;
  out.reduced = d;
  out.firing.assign(g.vertex_count, 0);
  Chips& c = out.reduced;

  // stage 1: clear deficits level by level, farthest from q first; inverse
  // firing the far set pushes chips outward from q
  std::vector<int> dist = g.bfs_distances(q);
  int maxdist = *std::max_element(dist.begin(), dist.end());
  for (int level = maxdist; level >= 1; --level) {
    long long t = 0;
    for (int v = 0; v < g.vertex_count; ++v) {
      if (dist[v] != level || c[v] >= 0) continue;
      long long cross = 0;
      for (int e : g.incident[v])
        if (dist[g.other_end(e, v)] < level) ++cross;
      t = std::max(t, (-c[v] + cross - 1) / cross);
    }
    if (t == 0) continue;
    for (int v = 0; v < g.vertex_count; ++v) {
      if (dist[v] < level) continue;
      out.firing[v] -= t;
      for (int e : g.incident[v]) {
        int w = g.other_end(e, v);
        if (dist[w] < level) {
          c[v] += t;
          c[w] -= t;
        }
      }
    }
  }

  // stage 2: Dhar superstabilization
  while (true) {
    std::vector<int> unburnt = detail::dhar_unburnt(g, c, q);
    if (unburnt.empty()) break;
    std::vector<char> in_set(g.vertex_count, 0);
    for (int v : unburnt) in_set[v] = 1;
    for (int v : unburnt) {
      out.firing[v] += 1;
      for (int e : g.incident[v]) {
        int w = g.other_end(e, v);
        if (!in_set[w]) {
          c[v] -= 1;
          c[w] += 1;
        }
      }
    }
  }
  return out;
}

// Effective representative exists iff the q-reduced form is effective at q.
inline bool is_winnable(const Multigraph& g, const Chips& d) {
  if (chips_degree(d) < 0) return false;
  return q_reduce(g, d, 0).reduced[0] >= 0;
}

struct RankResult {
  long long rank = -1;
  Chips witness;  // effective, degree rank+1, with D - witness not winnable
};

// Baker-Norine rank by enumeration: the largest k such that D minus every
// effective divisor of degree k is equivalent to an effective divisor.
inline RankResult rank(const Multigraph& g, const Chips& d) {
  if (!g.connected()) throw Disconnected("rank needs a connected graph");
  RankResult out;
  out.witness.assign(g.vertex_count, 0);
  if (chips_degree(d) < 0) return out;  // rank -1, witness 0 of degree 0
  if (!is_winnable(g, d)) return out;

  Chips e(g.vertex_count, 0);
  Chips bad;
  // does some effective divisor of degree k defeat D? (first witness in
  // lexicographic order, for determinism)
  std::function<bool(int, long long)> defeat = [&](int from, long long remaining) {
    if (remaining == 0) {
      Chips diff(d);
      for (int v = 0; v < g.vertex_count; ++v) diff[v] -= e[v];
      if (!is_winnable(g, diff)) {
        bad = e;
        return true;
      }
      return false;
    }
    for (int v = from; v < g.vertex_count; ++v) {
      ++e[v];
      if (defeat(v, remaining - 1)) return true;
      --e[v];
    }
    return false;
  };

  long long k = 1;
  while (true) {
    if (defeat(0, k)) {
      out.rank = k - 1;
      out.witness = bad;
      return out;
    }
    ++k;
    // degree k > deg D always defeats; the loop is finite
    if (k > chips_degree(d) + 1) throw std::logic_error("rank enumeration failed to terminate");
  }
}

// ---------------------------------------------------------------------------
// h^0 in dimension 1
// ---------------------------------------------------------------------------

inline Chips chips_of(const WeakTropicalComplex& w, const RidgeDivisor& d) {
  if (w.dimension() != 1) throw std::invalid_argument("chips_of needs dimension 1");
  if (!d.is_integral()) throw std::invalid_argument("integer divisor required");
  Chips c(w.ridge_count(), 0);
  for (std::size_t r = 0; r < d.coeffs.size(); ++r) c[r] = to_int(d.coeffs[r]).get_si();
  return c;
}

inline void require_not_a_point(const WeakTropicalComplex& w) {
  if (w.complex().count(0) == 1 && w.complex().count(1) == 0)
    throw SinglePointComplex("h^0 is not defined on a single-point complex");
}

// h^0 via rank: promote the given rational points to vertices of a common
// subdivision, compute the rank there, and return rank + 1. Rank is
// invariant under subdivision, so extra points only refine the model.
inline long long h0_dim1(const WeakTropicalComplex& w, const RidgeDivisor& d,
                         const std::vector<RationalPoint>& points = {}) {
  require_not_a_point(w);
  if (points.empty()) {
    Multigraph g = Multigraph::from_complex(w);
    return rank(g, chips_of(w, d)).rank + 1;
  }
  PromotedPoints promoted = promote_points(w, points);
  RidgeDivisor dm =
      express_on_subdivision(d, promoted.subdivision.map, promoted.subdivision.complex);
  Multigraph g = Multigraph::from_complex(promoted.subdivision.complex);
  return rank(g, chips_of(promoted.subdivision.complex, dm)).rank + 1;
}

// Direct search from the definition of h^0: the smallest m such that some m
// distinct rational points admit no effective equivalent divisor through all
// of them. Candidate points are vertices of subdivisions whose orders come
// from `pool_orders`; a witness found at size m is definitive (h^0 <= m),
// and no witness can exist below rank+1, so the search is exact whenever the
// pools are fine enough to exhibit a witness at the true value.
struct H0DirectResult {
  long long h0 = 0;
  int witness_order = 1;       // subdivision order carrying the witness set
  std::vector<int> witness;    // vertex indices on that subdivision
};

inline H0DirectResult h0_direct(const WeakTropicalComplex& w, const RidgeDivisor& d,
                                const std::vector<int>& pool_orders = {1, 2}) {
  require_not_a_point(w);
  Multigraph base = Multigraph::from_complex(w);
  if (!base.connected()) throw Disconnected("h0_direct needs a connected graph");
  Chips base_chips = chips_of(w, d);
  long long deg = chips_degree(base_chips);

  H0DirectResult out;
  if (!is_winnable(base, base_chips)) {
    out.h0 = 0;  // no effective equivalent at all: the empty set witnesses
    return out;
  }

  struct Pool {
    int order;
    Multigraph graph;
    Chips chips;
  };
  std::vector<Pool> pools;
  for (int k : pool_orders) {
    if (k == 1) {
      pools.push_back({1, base, base_chips});
      continue;
    }
    Subdivision sub = subdivide(w, k);
    RidgeDivisor dm = express_on_subdivision(d, sub.map, sub.complex);
    pools.push_back({k, Multigraph::from_complex(sub.complex), chips_of(sub.complex, dm)});
  }

  for (long long m = 1; m <= deg + 1; ++m) {
    for (const Pool& pool : pools) {
      if (static_cast<long long>(pool.graph.vertex_count) < m) continue;
      // lexicographic subsets of the pool's vertices
      std::vector<int> pick;
      std::function<bool(int)> search = [&](int from) {
        if (static_cast<long long>(pick.size()) == m) {
          Chips diff = pool.chips;
          for (int v : pick) diff[v] -= 1;
          return !is_winnable(pool.graph, diff);
        }
        for (int v = from; v < pool.graph.vertex_count; ++v) {
          pick.push_back(v);
          if (search(v + 1)) return true;
          pick.pop_back();
        }
        return false;
      };
      if (search(0)) {
        out.h0 = m;
        out.witness_order = pool.order;
        out.witness = pick;
        return out;
      }
    }
  }
  throw std::logic_error("h0_direct: no witness found at degree+1 points");
}

}  // namespace tropx

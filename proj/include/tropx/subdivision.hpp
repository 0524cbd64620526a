#pragma once

// Order-m subdivisions of weak tropical complexes of dimension <= 2, with
// exact structure-constant transfer: the midpoint rule for ridges meeting a
// facet interior, and the coordinate-change system for ridges inside an old
// ridge. Each dilated simplex carries the standard (staircase) unimodular
// triangulation; cell vertex lists are ordered lexicographically on host
// coordinates, which keeps induced face orders consistent across shared
// faces.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tropx/divisor_types.hpp"
#include "tropx/exact_linalg.hpp"
#include "tropx/tropical_complex.hpp"

namespace tropx {

struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SubdivisionMap {
  int order = 1;

  struct VertexHost {
    SimplexId host;            // minimal old simplex containing the vertex
    std::vector<Int> coords;   // dim(host)+1 non-negative integers, sum = order
  };
  std::vector<VertexHost> vertex_hosts;  // indexed by new vertex

  // Minimal old host of each new simplex, by (dim, index).
  std::vector<std::vector<SimplexId>> simplex_hosts;

  // For each new ridge: its endpoint coordinates lifted into its host.
  struct RidgeGeometry {
    SimplexId host;
    std::vector<std::vector<Int>> endpoint_coords;  // one vector per vertex
  };
  std::vector<RidgeGeometry> ridge_geometry;

  // Lookup of a new vertex by (minimal host, coordinates).
  std::map<std::pair<SimplexId, std::vector<long>>, int> vertex_lookup;

  int find_vertex(SimplexId host, const std::vector<Int>& coords) const {
    std::vector<long> key;
    for (const auto& c : coords) key.push_back(c.get_si());
    auto it = vertex_lookup.find({host, key});
    return it == vertex_lookup.end() ? -1 : it->second;
  }
};

struct Subdivision {
  WeakTropicalComplex complex;
  SubdivisionMap map;
};

namespace detail {

using Coord = std::vector<long>;  // lattice coordinates, small by construction

inline std::string coord_string(const Coord& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s;
}

// Support positions (nonzero coordinates) of a lattice point.
inline std::vector<int> support(const Coord& c) {
  std::vector<int> s;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) s.push_back(static_cast<int>(i));
  return s;
}

inline Coord restrict_to(const Coord& c, const std::vector<int>& positions) {
  Coord out;
  for (int p : positions) out.push_back(c[p]);
  return out;
}

// Vertex lists are ordered by descending lex on coordinates: the order is
// consistent under face restriction (so face maps of the subdivision
// commute) and reproduces the original vertex order when m = 1.
inline bool coord_before(const Coord& a, const Coord& b) { return a > b; }

inline void sort_cell(std::vector<Coord>& cell) {
  std::sort(cell.begin(), cell.end(), coord_before);
}

// Cells of the standard triangulation of the dim-simplex dilated by m.
inline std::vector<std::vector<Coord>> standard_cells(int dim, long m) {
  std::vector<std::vector<Coord>> cells;
  if (dim == 1) {
    for (long i = 0; i < m; ++i) {
      std::vector<Coord> cell{{m - i, i}, {m - i - 1, i + 1}};
      sort_cell(cell);
      cells.push_back(cell);
    }
    return cells;
  }
  if (dim != 2) throw UnsupportedDimension("standard_cells: dimension must be 1 or 2");
  // up cells: a + e0, a + e1, a + e2 with |a| = m-1
  for (long a0 = 0; a0 <= m - 1; ++a0)
    for (long a1 = 0; a1 + a0 <= m - 1; ++a1) {
      long a2 = m - 1 - a0 - a1;
      std::vector<Coord> cell{{a0 + 1, a1, a2}, {a0, a1 + 1, a2}, {a0, a1, a2 + 1}};
      sort_cell(cell);
      cells.push_back(cell);
    }
  // down cells: a + e1+e2, a + e0+e2, a + e0+e1 with |a| = m-2
  for (long a0 = 0; a0 <= m - 2; ++a0)
    for (long a1 = 0; a1 + a0 <= m - 2; ++a1) {
      long a2 = m - 2 - a0 - a1;
      std::vector<Coord> cell{{a0, a1 + 1, a2 + 1}, {a0 + 1, a1, a2 + 1}, {a0 + 1, a1 + 1, a2}};
      sort_cell(cell);
      cells.push_back(cell);
    }
  return cells;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// subdivide
// ---------------------------------------------------------------------------

inline Subdivision subdivide(const WeakTropicalComplex& w, int m) {
  using detail::Coord;
  if (m < 1) throw std::invalid_argument("subdivision order must be >= 1");
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  if (n > 2) throw UnsupportedDimension("subdivide supports dimensions 1 and 2");
  w.require_weak();

  const long M = m;
  SubdivisionMap map;
  map.order = m;

  // --- vertices -----------------------------------------------------------
  // Canonical form of a lattice point of old simplex s: restrict to its
  // support face; key = (minimal host, restricted coords).
  auto canonical_vertex = [&](SimplexId s, const Coord& c) {
    std::vector<int> supp = detail::support(c);
    SimplexId host = dc.face_by_positions(s, supp);
    return std::make_pair(host, detail::restrict_to(c, supp));
  };

  std::vector<SimplexRecord> records;
  auto add_vertex = [&](SimplexId host, const Coord& coords) {
    auto key = std::make_pair(host, coords);
    if (map.vertex_lookup.count(key)) return;
    int idx = static_cast<int>(map.vertex_hosts.size());
    map.vertex_lookup[key] = idx;
    SubdivisionMap::VertexHost vh;
    vh.host = host;
    for (long c : coords) vh.coords.push_back(Int(c));
    map.vertex_hosts.push_back(std::move(vh));
    SimplexRecord rec;
    rec.dim = 0;
    rec.id = host.dim == 0 ? dc.id_of(host)
                           : dc.id_of(host) + "@" + detail::coord_string(coords);
    records.push_back(std::move(rec));
  };

  for (std::size_t v = 0; v < dc.count(0); ++v)
    add_vertex(SimplexId{0, static_cast<int>(v)}, Coord{M});
  for (int d = 1; d <= n; ++d)
    for (std::size_t i = 0; i < dc.count(d); ++i) {
      // interior lattice points, lex order
      SimplexId s{d, static_cast<int>(i)};
      if (d == 1) {
        for (long a = 1; a < M; ++a) add_vertex(s, Coord{M - a, a});
      } else {
        for (long a0 = 1; a0 <= M - 2; ++a0)
          for (long a1 = 1; a0 + a1 <= M - 1; ++a1) {
            long a2 = M - a0 - a1;
            if (a2 >= 1) add_vertex(s, Coord{a0, a1, a2});
          }
      }
    }

  auto vertex_id_of = [&](SimplexId host, const Coord& coords) -> std::string {
    auto key = std::make_pair(host, coords);
    return records[map.vertex_lookup.at(key)].id;
  };

  // --- edges ----------------------------------------------------------------
  // Canonical descriptor: (minimal host, sorted endpoint coords in the host).
  struct EdgeInfo {
    SimplexId host;
    Coord a, b;  // lex-sorted endpoints in host coordinates
    std::string id;
  };
  std::map<std::pair<SimplexId, std::pair<Coord, Coord>>, int> edge_lookup;
  std::vector<EdgeInfo> edges;

  auto canonical_edge = [&](SimplexId s, Coord p, Coord q) {
    std::vector<int> supp = detail::support(p);
    for (int pos : detail::support(q))
      if (!std::binary_search(supp.begin(), supp.end(), pos)) {
        supp.push_back(pos);
        std::sort(supp.begin(), supp.end());
      }
    SimplexId host = dc.face_by_positions(s, supp);
    Coord pa = detail::restrict_to(p, supp), qa = detail::restrict_to(q, supp);
    if (!detail::coord_before(pa, qa)) std::swap(pa, qa);
    return std::make_tuple(host, pa, qa);
  };

  auto add_edge = [&](SimplexId s, const Coord& p, const Coord& q) {
    auto [host, pa, qa] = canonical_edge(s, p, q);
    auto key = std::make_pair(host, std::make_pair(pa, qa));
    if (edge_lookup.count(key)) return;
    int idx = static_cast<int>(edges.size());
    edge_lookup[key] = idx;
    EdgeInfo info;
    info.host = host;
    info.a = pa;
    info.b = qa;
    info.id = (m == 1 && host.dim == 1)
                  ? dc.id_of(host)
                  : dc.id_of(host) + "#" + detail::coord_string(pa) + "-" + detail::coord_string(qa);
    edges.push_back(std::move(info));
  };

  // sub-edges of old edges first, then facet-interior edges
  for (std::size_t e = 0; e < dc.count(1); ++e) {
    SimplexId s{1, static_cast<int>(e)};
    for (long a = 0; a < M; ++a) add_edge(s, Coord{M - a, a}, Coord{M - a - 1, a + 1});
  }
  if (n == 2)
    for (std::size_t f = 0; f < dc.count(2); ++f) {
      SimplexId s{2, static_cast<int>(f)};
      for (const auto& cell : detail::standard_cells(2, M)) {
        add_edge(s, cell[0], cell[1]);
        add_edge(s, cell[0], cell[2]);
        add_edge(s, cell[1], cell[2]);
      }
    }

  for (const auto& info : edges) {
    SimplexRecord rec;
    rec.dim = 1;
    rec.id = info.id;
    // faces[i] omits vertex i: for [a, b] store [b, a]
    auto [ha, ca] = canonical_vertex(info.host, info.a);
    auto [hb, cb] = canonical_vertex(info.host, info.b);
    rec.faces = {vertex_id_of(hb, cb), vertex_id_of(ha, ca)};
    records.push_back(std::move(rec));
  }

  auto edge_id_of = [&](SimplexId s, const Coord& p, const Coord& q) -> std::string {
    auto [host, pa, qa] = canonical_edge(s, p, q);
    return edges[edge_lookup.at({host, {pa, qa}})].id;
  };

  // --- facets (n = 2) -------------------------------------------------------
  if (n == 2)
    for (std::size_t f = 0; f < dc.count(2); ++f) {
      SimplexId s{2, static_cast<int>(f)};
      for (const auto& cell : detail::standard_cells(2, M)) {
        SimplexRecord rec;
        rec.dim = 2;
        rec.id = (m == 1) ? dc.id_of(s)
                          : dc.id_of(s) + "!" + detail::coord_string(cell[0]) + "-" +
                                detail::coord_string(cell[1]) + "-" + detail::coord_string(cell[2]);
        rec.faces = {edge_id_of(s, cell[1], cell[2]), edge_id_of(s, cell[0], cell[2]),
                     edge_id_of(s, cell[0], cell[1])};
        records.push_back(std::move(rec));
      }
    }

  DeltaComplex sub = DeltaComplex::build(n, records);

  // --- bookkeeping: hosts and ridge geometry -------------------------------
  map.simplex_hosts.assign(n + 1, {});
  map.simplex_hosts[0].reserve(map.vertex_hosts.size());
  for (const auto& vh : map.vertex_hosts) map.simplex_hosts[0].push_back(vh.host);
  for (const auto& info : edges) map.simplex_hosts[1].push_back(info.host);
  if (n == 2) {
    const std::size_t cells_per_facet = detail::standard_cells(2, M).size();
    map.simplex_hosts[2].reserve(sub.count(2));
    for (std::size_t f = 0; f < dc.count(2); ++f)
      for (std::size_t c = 0; c < cells_per_facet; ++c)
        map.simplex_hosts[2].push_back(SimplexId{2, static_cast<int>(f)});
  }

  const int ridge_dim = n - 1;
  map.ridge_geometry.resize(sub.count(ridge_dim));
  if (n == 1) {
    for (std::size_t v = 0; v < map.vertex_hosts.size(); ++v) {
      map.ridge_geometry[v].host = map.vertex_hosts[v].host;
      map.ridge_geometry[v].endpoint_coords = {map.vertex_hosts[v].coords};
    }
  } else {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      map.ridge_geometry[e].host = edges[e].host;
      std::vector<Int> a, b;
      for (long c : edges[e].a) a.push_back(Int(c));
      for (long c : edges[e].b) b.push_back(Int(c));
      // order must match the stored simplex's vertex order (lex ascending)
      map.ridge_geometry[e].endpoint_coords = {a, b};
    }
  }

  // --- structure constants ---------------------------------------------------
  // Lift a point given in coordinates of a face (reached from `big` by the
  // sorted position list `positions`) back into coordinates of `big`.
  auto lift = [&](const std::vector<int>& positions, const std::vector<Int>& c, int big_dim) {
    std::vector<Int> out(static_cast<std::size_t>(big_dim + 1), Int(0));
    for (std::size_t i = 0; i < positions.size(); ++i) out[positions[i]] = c[i];
    return out;
  };

  // positions of face `face` inside simplex `s` (which sorted vertex-position
  // subset realizes it); unique in a regular complex.
  auto face_positions = [&](SimplexId s, SimplexId face) -> std::vector<int> {
    std::vector<std::vector<int>> candidates;
    std::vector<int> all(s.dim + 1);
    for (int i = 0; i <= s.dim; ++i) all[i] = i;
    // enumerate (dim face + 1)-subsets
    std::vector<int> sel(face.dim + 1);
    for (int i = 0; i <= face.dim; ++i) sel[i] = i;
    while (true) {
      if (dc.face_by_positions(s, sel) == face) return sel;
      int i = face.dim;
      bool moved = false;
      for (; i >= 0; --i)
        if (sel[i] < s.dim - (face.dim - i)) {
          ++sel[i];
          for (int j = i + 1; j <= face.dim; ++j) sel[j] = sel[j - 1] + 1;
          moved = true;
          break;
        }
      if (!moved) break;
    }
    throw std::logic_error("face_positions: face not found in simplex");
  };

  std::map<std::pair<int, int>, Int> alpha;
  for (std::size_t r = 0; r < sub.count(ridge_dim); ++r) {
    const auto& geom = map.ridge_geometry[r];
    const SimplexId host = geom.host;
    if (host.dim == n) {
      // midpoint rule inside an old facet: (w1+w2)/2 = sum c_i v_i'
      const auto& cf = sub.cofaces(ridge_dim, static_cast<int>(r));
      if (cf.size() != 2) throw std::logic_error("interior ridge not in exactly 2 facets");
      std::vector<std::vector<Rat>> opposite;  // the two w's in old-facet coords
      for (const auto& inc : cf) {
        const auto& facet = sub.simplex(n, inc.simplex);
        int opp_vertex = facet.vertices[inc.position];
        const auto& vh = map.vertex_hosts[opp_vertex];
        // lift the opposite vertex into the old facet's coordinates
        std::vector<int> pos = face_positions(host, vh.host);
        auto lifted = lift(pos, vh.coords, host.dim);
        std::vector<Rat> wr;
        for (const auto& c : lifted) wr.push_back(Rat(c));
        opposite.push_back(std::move(wr));
      }
      // ridge vertices in host coords (the ridge is hosted by the facet)
      RatMatrix sys(host.dim + 1, n);
      std::vector<Rat> rhs(host.dim + 1);
      for (int i = 0; i <= host.dim; ++i) {
        for (int j = 0; j < n; ++j) sys(i, j) = Rat(geom.endpoint_coords[j][i]);
        rhs[i] = (opposite[0][i] + opposite[1][i]) / 2;
      }
      auto sol = solve_rational(sys, rhs);
      if (!sol.consistent()) throw std::logic_error("midpoint not in ridge span");
      for (int j = 0; j < n; ++j) {
        Rat aj = (*sol.solution)[j] * 2;
        if (!is_integer(aj))
          throw std::logic_error("non-integral structure constant from midpoint rule");
        alpha[{static_cast<int>(r), j}] = to_int(aj);
      }
    } else if (host.dim == n - 1) {
      // ridge inside an old ridge: solve the coordinate-change system
      const int old_ridge = host.index;
      // y columns: coordinates of the new ridge's vertices within the old ridge
      RatMatrix y(n, n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) y(i, j) = Rat(geom.endpoint_coords[j][i]);
      std::vector<Rat> rhs(n);
      for (int i = 0; i < n; ++i) rhs[i] = Rat(w.alpha(old_ridge, i));
      // accumulate, per old facet containing the old ridge, the extra vertex
      // of the unique new facet containing this ridge
      for (const auto& inc : dc.cofaces(n - 1, old_ridge)) {
        if (n == 1) {
          // the new facet is the sub-edge at this end of the old edge; its
          // other endpoint has coordinate m-1 along the old vertex
          rhs[0] += Rat(M - 1);
          continue;
        }
        // positions of the old ridge's vertices within the old facet
        std::vector<int> rpos;
        for (int p = 0; p <= n; ++p)
          if (p != inc.position) rpos.push_back(p);
        // lift ridge endpoints into old facet coords
        std::vector<std::vector<Int>> lifted;
        for (int j = 0; j < n; ++j) lifted.push_back(lift(rpos, geom.endpoint_coords[j], n));
        auto same = [&](const detail::Coord& cc, const std::vector<Int>& pt) {
          for (int i = 0; i <= n; ++i)
            if (Int(cc[i]) != pt[i]) return false;
          return true;
        };
        bool found = false;
        for (const auto& cell : detail::standard_cells(n, M)) {
          auto matches = [&](const std::vector<Int>& pt) {
            for (const auto& cc : cell)
              if (same(cc, pt)) return true;
            return false;
          };
          if (!matches(lifted[0]) || !matches(lifted[1])) continue;
          for (const auto& cc : cell) {
            if (same(cc, lifted[0]) || same(cc, lifted[1])) continue;
            if (cc[inc.position] != 1)
              throw std::logic_error("unimodularity: extra vertex coordinate must be 1");
            for (int i = 0; i < n; ++i) rhs[i] += Rat(Int(cc[rpos[i]]));
            found = true;
          }
          break;
        }
        if (!found) throw std::logic_error("no cell contains the subdivided ridge");
      }
      auto sol = solve_rational(y, rhs);
      if (!sol.consistent()) throw std::logic_error("ridge coordinate system inconsistent");
      for (int j = 0; j < n; ++j) {
        if (!is_integer((*sol.solution)[j]))
          throw std::logic_error("non-integral structure constant from ridge transfer");
        alpha[{static_cast<int>(r), j}] = to_int((*sol.solution)[j]);
      }
    } else {
      throw std::logic_error("new ridge hosted in a simplex of unexpected dimension");
    }
  }

  Subdivision out;
  out.complex = WeakTropicalComplex::make(std::move(sub), std::move(alpha));
  out.complex.require_weak();  // the transfer must give a weak tropical complex
  out.map = std::move(map);
  return out;
}

// ---------------------------------------------------------------------------
// Divisor re-expression and PL transfer
// ---------------------------------------------------------------------------

// Expresses a base divisor on the order-m subdivision: each old ridge's
// coefficient is inherited by all of its sub-ridges.
inline RidgeDivisor express_on_subdivision(const RidgeDivisor& d, const SubdivisionMap& map,
                                           const WeakTropicalComplex& sub) {
  if (d.order != 1) throw std::invalid_argument("express_on_subdivision expects a base divisor");
  RidgeDivisor out(sub.ridge_count(), map.order);
  const int ridge_dim = sub.dimension() - 1;
  for (std::size_t r = 0; r < sub.ridge_count(); ++r) {
    SimplexId host = map.simplex_hosts[ridge_dim][r];
    if (host.dim == ridge_dim) out.coeffs[r] = d.coeffs[host.index];
  }
  return out;
}

// Re-expresses a divisor living on the order-a subdivision onto the order-m
// one (a must divide m): a sub-ridge inherits the coefficient of the unique
// order-a ridge containing it.
inline RidgeDivisor re_express(const RidgeDivisor& d, const SubdivisionMap& map_a,
                               const SubdivisionMap& map_m, const WeakTropicalComplex& sub_m) {
  if (d.order != map_a.order) throw std::invalid_argument("divisor order mismatch");
  if (map_m.order % map_a.order != 0)
    throw std::invalid_argument("target order must be a multiple of the source order");
  if (map_a.order == 1) return express_on_subdivision(d, map_m, sub_m);
  const int ridge_dim = sub_m.dimension() - 1;
  RidgeDivisor out(sub_m.ridge_count(), map_m.order);
  const Rat scale_a(1, map_a.order), scale_m(1, map_m.order);
  for (std::size_t r = 0; r < sub_m.ridge_count(); ++r) {
    const auto& gm = map_m.ridge_geometry[r];
    // candidates: order-a ridges with the same minimal host
    for (std::size_t ra = 0; ra < map_a.ridge_geometry.size(); ++ra) {
      const auto& ga = map_a.ridge_geometry[ra];
      if (!(ga.host == gm.host)) continue;
      if (d.coeffs[ra] == 0) continue;
      // containment of both endpoints in the segment/point over the host
      bool contained = true;
      if (ridge_dim == 0) {
        for (std::size_t i = 0; i < gm.endpoint_coords[0].size(); ++i)
          if (Rat(gm.endpoint_coords[0][i]) * scale_m != Rat(ga.endpoint_coords[0][i]) * scale_a)
            contained = false;
      } else {
        for (const auto& pt : gm.endpoint_coords) {
          // pt/m = A + t (B - A) with t in [0, 1]?
          const auto& A = ga.endpoint_coords[0];
          const auto& B = ga.endpoint_coords[1];
          std::optional<Rat> t;
          bool ok = true;
          for (std::size_t i = 0; i < pt.size() && ok; ++i) {
            Rat lhs = Rat(pt[i]) * scale_m - Rat(A[i]) * scale_a;
            Rat dir = (Rat(B[i]) - Rat(A[i])) * scale_a;
            if (dir == 0) {
              if (lhs != 0) ok = false;
            } else if (!t) {
              t = lhs / dir;
            } else if (*t * dir != lhs) {
              ok = false;
            }
          }
          if (!ok || !t || *t < 0 || *t > 1) contained = false;
          if (!contained) break;
        }
      }
      if (contained) {
        out.coeffs[r] = d.coeffs[ra];
        break;
      }
    }
  }
  return out;
}

// phi' = m * phi evaluated at subdivision vertices (exact interpolation).
inline PLFunction transfer_pl(const WeakTropicalComplex& base, const SubdivisionMap& map,
                              const PLFunction& phi) {
  if (phi.order != 1) throw std::invalid_argument("transfer_pl expects a base PL function");
  if (phi.values.size() != base.vertex_count())
    throw std::invalid_argument("PL function size mismatch");
  PLFunction out(map.vertex_hosts.size(), map.order);
  const DeltaComplex& dc = base.complex();
  for (std::size_t v = 0; v < map.vertex_hosts.size(); ++v) {
    const auto& vh = map.vertex_hosts[v];
    const auto& verts = dc.simplex(vh.host).vertices;
    Rat acc(0);
    for (std::size_t j = 0; j < verts.size(); ++j) acc += Rat(vh.coords[j]) * phi.values[verts[j]];
    out.values[v] = acc;
  }
  return out;
}

// Smallest subdivision making every point a vertex, with the vertex indices.
struct PromotedPoints {
  int order = 1;
  Subdivision subdivision;
  std::vector<int> vertices;
};

inline PromotedPoints promote_points(const WeakTropicalComplex& w,
                                     const std::vector<RationalPoint>& points,
                                     int force_multiple_of = 1) {
  Int m(force_multiple_of);
  std::vector<RationalPoint> normalized;
  for (const auto& p : points) {
    RationalPoint q = normalize_point(w.complex(), p);
    for (const auto& c : q.coords) m = lcm(m, c.get_den());
    normalized.push_back(std::move(q));
  }
  int order = static_cast<int>(m.get_si());
  PromotedPoints out;
  out.order = order;
  out.subdivision = subdivide(w, order);
  for (const auto& q : normalized) {
    std::vector<Int> coords;
    for (const auto& c : q.coords) coords.push_back(to_int(c * order));
    int v = out.subdivision.map.find_vertex(q.host, coords);
    if (v < 0) throw std::logic_error("promoted point is not a subdivision vertex");
    out.vertices.push_back(v);
  }
  return out;
}

inline PromotedPoints promote_point(const WeakTropicalComplex& w, const RationalPoint& p) {
  return promote_points(w, {p});
}

}  // namespace tropx

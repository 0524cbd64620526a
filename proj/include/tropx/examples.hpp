#pragma once

// Built-in example complexes: the boundary of a tetrahedron, the
// circumference-2 cylinder with parameterized boundary constants, two
// triangles glued along an edge, the triangulated square of a ruled-surface
// degeneration, and multigraph builders for the 1-dimensional theory.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropx/tropical_complex.hpp"

namespace tropx {

// Assembles a weak tropical complex from records plus alpha keyed by
// (ridge id, vertex position).
inline WeakTropicalComplex make_weak_complex(
    int n, const std::vector<SimplexRecord>& records,
    const std::map<std::pair<std::string, int>, long>& alpha_by_id) {
  DeltaComplex dc = DeltaComplex::build(n, records);
  std::map<std::pair<int, int>, Int> alpha;
  for (const auto& [key, value] : alpha_by_id) {
    SimplexId s = dc.require(key.first);
    if (s.dim != n - 1) throw std::invalid_argument("alpha key " + key.first + " is not a ridge");
    alpha[{s.index, key.second}] = Int(value);
  }
  return WeakTropicalComplex::make(std::move(dc), std::move(alpha));
}

inline SimplexRecord vertex_record(const std::string& id) { return SimplexRecord{id, 0, {}}; }

// Edge with vertex order (a, b): faces[i] omits vertex i, so faces = [b, a].
inline SimplexRecord edge_record(const std::string& id, const std::string& a,
                                 const std::string& b) {
  return SimplexRecord{id, 1, {b, a}};
}

// Triangle with vertex order (v0, v1, v2) and edge objects e12, e02, e01
// whose own vertex orders match the induced ones.
inline SimplexRecord triangle_record(const std::string& id, const std::string& e12,
                                     const std::string& e02, const std::string& e01) {
  return SimplexRecord{id, 2, {e12, e02, e01}};
}

// Boundary of a tetrahedron, all structure constants 1.
inline WeakTropicalComplex make_tetrahedron() {
  std::vector<SimplexRecord> recs;
  for (int v = 0; v < 4; ++v) recs.push_back(vertex_record("v" + std::to_string(v)));
  auto ename = [](int a, int b) { return "e" + std::to_string(a) + std::to_string(b); };
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      recs.push_back(edge_record(ename(a, b), "v" + std::to_string(a), "v" + std::to_string(b)));
  // facets on ascending vertex triples
  const int tri[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  std::map<std::pair<std::string, int>, long> alpha;
  for (const auto& t : tri)
    recs.push_back(triangle_record(
        "f" + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]),
        ename(t[1], t[2]), ename(t[0], t[2]), ename(t[0], t[1])));
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      alpha[{ename(a, b), 0}] = 1;
      alpha[{ename(a, b), 1}] = 1;
    }
  return make_weak_complex(2, recs, alpha);
}

// Triangulated cylinder of circumference 2 and height 1: two squares glued
// along vertical edges, each cut by a diagonal. Boundary (top/bottom) edges
// have degree 1; their constants are parameters subject to the ridge
// identity: alpha at the edge's first vertex is the parameter, the second
// gets 1 - parameter. Interior constants are 1.
struct CylinderConstants {
  long top0 = 0, top1 = 0, bottom0 = 0, bottom1 = 0;
  bool operator==(const CylinderConstants&) const = default;
};

inline WeakTropicalComplex make_cylinder(const CylinderConstants& c) {
  std::vector<SimplexRecord> recs;
  for (const char* v : {"T0", "T1", "B0", "B1"}) recs.push_back(vertex_record(v));
  recs.push_back(edge_record("t0", "T0", "T1"));
  recs.push_back(edge_record("t1", "T1", "T0"));
  recs.push_back(edge_record("b0", "B0", "B1"));
  recs.push_back(edge_record("b1", "B1", "B0"));
  recs.push_back(edge_record("u0", "T0", "B0"));
  recs.push_back(edge_record("u1", "T1", "B1"));
  recs.push_back(edge_record("d0", "T0", "B1"));
  recs.push_back(edge_record("d1", "T1", "B0"));
  recs.push_back(triangle_record("F0", "u1", "d0", "t0"));  // (T0, T1, B1)
  recs.push_back(triangle_record("F1", "b0", "d0", "u0"));  // (T0, B0, B1)
  recs.push_back(triangle_record("F2", "u0", "d1", "t1"));  // (T1, T0, B0)
  recs.push_back(triangle_record("F3", "b1", "d1", "u1"));  // (T1, B1, B0)
  std::map<std::pair<std::string, int>, long> alpha;
  auto boundary = [&](const std::string& e, long first) {
    alpha[{e, 0}] = first;
    alpha[{e, 1}] = 1 - first;
  };
  boundary("t0", c.top0);
  boundary("t1", c.top1);
  boundary("b0", c.bottom0);
  boundary("b1", c.bottom1);
  for (const char* e : {"u0", "u1", "d0", "d1"}) {
    alpha[{e, 0}] = 1;
    alpha[{e, 1}] = 1;
  }
  WeakTropicalComplex w = make_weak_complex(2, recs, alpha);
  w.require_weak();
  return w;
}

// Cylinder with all eight boundary constants given explicitly, keyed by
// (edge id, vertex position). Rejects assignments violating the ridge
// identity on any boundary edge.
inline WeakTropicalComplex make_cylinder_explicit(
    const std::map<std::pair<std::string, int>, long>& boundary) {
  for (const char* e : {"t0", "t1", "b0", "b1"}) {
    long sum = boundary.at({e, 0}) + boundary.at({e, 1});
    if (sum != 1)
      throw RidgeIdentityViolated(std::string("boundary edge ") + e +
                                  ": constants must sum to its degree 1");
  }
  CylinderConstants c{boundary.at({"t0", 0}), boundary.at({"t1", 0}), boundary.at({"b0", 0}),
                      boundary.at({"b1", 0})};
  return make_cylinder(c);
}

// Two triangles glued along the edge TB. Boundary constants put 1 at the
// side vertices, which makes the complex tropical.
inline WeakTropicalComplex make_two_triangles() {
  std::vector<SimplexRecord> recs;
  for (const char* v : {"T", "B", "L", "R"}) recs.push_back(vertex_record(v));
  recs.push_back(edge_record("e", "T", "B"));
  recs.push_back(edge_record("tl", "T", "L"));
  recs.push_back(edge_record("bl", "B", "L"));
  recs.push_back(edge_record("tr", "T", "R"));
  recs.push_back(edge_record("br", "B", "R"));
  recs.push_back(triangle_record("left", "bl", "tl", "e"));   // (T, B, L)
  recs.push_back(triangle_record("right", "br", "tr", "e"));  // (T, B, R)
  std::map<std::pair<std::string, int>, long> alpha;
  alpha[{"e", 0}] = 1;
  alpha[{"e", 1}] = 1;
  alpha[{"tl", 0}] = 0;
  alpha[{"tl", 1}] = 1;
  alpha[{"bl", 0}] = 0;
  alpha[{"bl", 1}] = 1;
  alpha[{"tr", 0}] = 0;
  alpha[{"tr", 1}] = 1;
  alpha[{"br", 0}] = 0;
  alpha[{"br", 1}] = 1;
  return make_weak_complex(2, recs, alpha);
}

// The triangulated unit square of a degeneration of a quadric surface:
// vertices A=(0,0), B=(1,0), C=(1,1), D=(0,1), diagonal AC. Constants come
// from the toric model with axis-parallel recession rays.
inline WeakTropicalComplex make_ruled_square() {
  std::vector<SimplexRecord> recs;
  for (const char* v : {"A", "B", "C", "D"}) recs.push_back(vertex_record(v));
  recs.push_back(edge_record("ab", "A", "B"));
  recs.push_back(edge_record("bc", "B", "C"));
  recs.push_back(edge_record("cd", "C", "D"));
  recs.push_back(edge_record("ad", "A", "D"));
  recs.push_back(edge_record("ac", "A", "C"));
  recs.push_back(triangle_record("lower", "bc", "ac", "ab"));  // (A, B, C)
  recs.push_back(triangle_record("upper", "cd", "ad", "ac"));  // (A, C, D)
  std::map<std::pair<std::string, int>, long> alpha;
  alpha[{"ab", 0}] = 0;
  alpha[{"ab", 1}] = 1;
  alpha[{"bc", 0}] = 1;
  alpha[{"bc", 1}] = 0;
  alpha[{"cd", 0}] = 0;
  alpha[{"cd", 1}] = 1;
  alpha[{"ad", 0}] = 0;
  alpha[{"ad", 1}] = 1;
  alpha[{"ac", 0}] = 1;
  alpha[{"ac", 1}] = 1;
  return make_weak_complex(2, recs, alpha);
}

// The intersection table of the ruling-line specialization on the square:
// +1 on the four outer edges, -1 on the diagonal.
inline std::map<std::string, Int> ruled_square_specialization_table() {
  return {{"ab", Int(1)}, {"bc", Int(1)}, {"cd", Int(1)}, {"ad", Int(1)}, {"ac", Int(-1)}};
}

// 1-dimensional complex from a multigraph edge list (no loops).
inline WeakTropicalComplex make_graph(int vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<SimplexRecord> recs;
  for (int v = 0; v < vertices; ++v) recs.push_back(vertex_record("v" + std::to_string(v)));
  for (std::size_t i = 0; i < edges.size(); ++i)
    recs.push_back(edge_record("e" + std::to_string(i), "v" + std::to_string(edges[i].first),
                               "v" + std::to_string(edges[i].second)));
  return make_weak_complex(1, recs, {});
}

inline WeakTropicalComplex make_cycle_graph(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
  return make_graph(k, edges);
}

inline WeakTropicalComplex make_complete_graph(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) edges.push_back({a, b});
  return make_graph(k, edges);
}

}  // namespace tropx

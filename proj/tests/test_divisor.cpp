#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "tropx/divisor.hpp"
#include "tropx/examples.hpp"
#include "tropx/pl_search.hpp"
#include "tropx/prng.hpp"

using namespace tropx;

namespace {

PLFunction random_integer_pl(Prng& rng, std::size_t vertices, long bound) {
  PLFunction phi(vertices);
  for (auto& v : phi.values) v = rat(rng.below(-bound, bound));
  return phi;
}

RidgeDivisor divisor_on(const WeakTropicalComplex& w,
                        const std::map<std::string, long>& coeffs) {
  RidgeDivisor d(w.ridge_count());
  for (const auto& [id, c] : coeffs) d.coeffs[w.complex().require(id).index] = rat(c);
  return d;
}

// reduced-Laplacian determinant = number of spanning trees
Int spanning_trees(const WeakTropicalComplex& g) {
  IntMatrix l(g.vertex_count(), g.vertex_count());
  const DeltaComplex& dc = g.complex();
  for (std::size_t e = 0; e < dc.count(1); ++e) {
    const auto& v = dc.simplex(1, static_cast<int>(e)).vertices;
    l(v[0], v[0]) += 1;
    l(v[1], v[1]) += 1;
    l(v[0], v[1]) -= 1;
    l(v[1], v[0]) -= 1;
  }
  IntMatrix red(g.vertex_count() - 1, g.vertex_count() - 1);
  for (std::size_t i = 1; i < g.vertex_count(); ++i)
    for (std::size_t j = 1; j < g.vertex_count(); ++j) red(i - 1, j - 1) = l(i, j);
  return det_integer(red);
}

}  // namespace

TEST_CASE("div of a constant function vanishes") {
  for (const WeakTropicalComplex& w :
       {make_tetrahedron(), make_two_triangles(), make_ruled_square(), make_cycle_graph(4)}) {
    PLFunction phi(w.vertex_count());
    for (auto& v : phi.values) v = rat(13);
    CHECK(div_pl(w, phi).is_zero());
  }
}

TEST_CASE("div of a vertex indicator on the tetrahedron") {
  WeakTropicalComplex w = make_tetrahedron();
  const DeltaComplex& dc = w.complex();
  PLFunction phi(w.vertex_count());
  phi.values[dc.require("v0").index] = rat(1);
  RidgeDivisor d = div_pl(w, phi);
  for (const char* e : {"e01", "e02", "e03"}) CHECK(d.coeffs[dc.require(e).index] == rat(-1));
  for (const char* e : {"e12", "e13", "e23"}) CHECK(d.coeffs[dc.require(e).index] == rat(1));
}

TEST_CASE("div on a graph is the Laplacian") {
  WeakTropicalComplex g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  Prng rng(77);
  for (int iter = 0; iter < 10; ++iter) {
    PLFunction phi = random_integer_pl(rng, g.vertex_count(), 9);
    RidgeDivisor d = div_pl(g, phi);
    const DeltaComplex& dc = g.complex();
    for (std::size_t r = 0; r < g.ridge_count(); ++r) {
      Rat expect(0);
      for (const auto& inc : dc.cofaces(0, static_cast<int>(r)))
        for (int v : dc.simplex(1, inc.simplex).vertices)
          if (v != static_cast<int>(r)) expect += phi.values[v] - phi.values[r];
      CHECK(d.coeffs[r] == expect);
    }
  }
  IntMatrix dm = div_matrix(g);
  const DeltaComplex& dc = g.complex();
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    CHECK(dm(i, i) == -Int(dc.ridge_degree(static_cast<int>(i))));
}

TEST_CASE("div_pl is linear and rejects non-integral slopes") {
  WeakTropicalComplex w = make_two_triangles();
  Prng rng(31);
  for (int iter = 0; iter < 12; ++iter) {
    PLFunction a = random_integer_pl(rng, w.vertex_count(), 7);
    PLFunction b = random_integer_pl(rng, w.vertex_count(), 7);
    PLFunction sum(w.vertex_count());
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] = a.values[i] + b.values[i];
    CHECK(div_pl(w, sum) == div_pl(w, a) + div_pl(w, b));
    long c = rng.below(-3, 3);
    PLFunction scaled(w.vertex_count());
    for (std::size_t i = 0; i < scaled.values.size(); ++i) scaled.values[i] = a.values[i] * rat(c);
    CHECK(div_pl(w, scaled) == div_pl(w, a) * rat(c));
  }
  PLFunction halves(w.vertex_count());
  halves.values[0] = rat(1, 2);
  CHECK_THROWS_AS(div_pl(w, halves), NonIntegralSlopes);
}

TEST_CASE("assemble_specialization") {
  WeakTropicalComplex tetra = make_tetrahedron();
  CHECK(assemble_specialization(tetra, {}).is_zero());

  RidgeDivisor d = assemble_specialization(tetra, {{"e01", Int(2)}});
  CHECK(d.coeffs[tetra.complex().require("e01").index] == rat(2));
  CHECK(d.degree() == rat(2));

  CHECK_THROWS_AS(assemble_specialization(tetra, {{"nope", Int(1)}}), UnknownRidgeId);
  CHECK_THROWS_AS(assemble_specialization(tetra, {{"v0", Int(1)}}), UnknownRidgeId);

  WeakTropicalComplex sq = make_ruled_square();
  RidgeDivisor rho = assemble_specialization(sq, ruled_square_specialization_table());
  CHECK_FALSE(rho.is_effective());
  CHECK(rho.coeffs[sq.complex().require("ac").index] == rat(-1));
  CHECK(rho.degree() == rat(3));
}

TEST_CASE("principal divisors are Cartier everywhere") {
  WeakTropicalComplex w = make_tetrahedron();
  Prng rng(5);
  PLFunction phi = random_integer_pl(rng, w.vertex_count(), 5);
  RidgeDivisor d = div_pl(w, phi);
  const DeltaComplex& dc = w.complex();
  for (int v = 0; v < 4; ++v) {
    RationalPoint p{SimplexId{0, v}, {rat(1)}};
    CHECK(is_cartier_at(w, d, p, CartierMode::Integral).cartier);
  }
  RationalPoint edge_pt{dc.require("e12"), {rat(1, 3), rat(2, 3)}};
  CHECK(is_cartier_at(w, d, edge_pt, CartierMode::Integral).cartier);
  RationalPoint face_pt{dc.require("f013"), {rat(1, 3), rat(1, 3), rat(1, 3)}};
  CHECK(is_cartier_at(w, d, face_pt, CartierMode::Integral).cartier);
}

TEST_CASE("ridge-interior points carry any integral coefficient") {
  WeakTropicalComplex w = make_two_triangles();
  const DeltaComplex& dc = w.complex();
  for (long c : {-3L, 1L, 5L}) {
    RidgeDivisor d = divisor_on(w, {{"e", c}});
    RationalPoint p{dc.require("e"), {rat(1, 2), rat(1, 2)}};
    CHECK(is_cartier_at(w, d, p, CartierMode::Integral).cartier);
  }
}

TEST_CASE("half of twice-an-edge is Q-Cartier but not Cartier") {
  WeakTropicalComplex w = make_tetrahedron();
  const DeltaComplex& dc = w.complex();
  RidgeDivisor half = divisor_on(w, {{"e01", 1}});  // (1/2) * (2 e01)
  RationalPoint vertex{dc.require("v0"), {rat(1)}};
  CHECK(is_cartier_at(w, half, vertex, CartierMode::Rational).cartier);
  CHECK_FALSE(is_cartier_at(w, half, vertex, CartierMode::Integral).cartier);

  RidgeDivisor full = divisor_on(w, {{"e01", 2}});
  CHECK(is_cartier_at(w, full, vertex, CartierMode::Integral).cartier);
  RidgeDivisor strict_half = full * rat(1, 2);
  CHECK(is_cartier_at(w, strict_half, vertex, CartierMode::Rational).cartier);
  CHECK_FALSE(is_cartier_at(w, strict_half, vertex, CartierMode::Integral).cartier);

  CHECK_THROWS_AS(
      is_cartier_at(w, full, RationalPoint{SimplexId{0, 99}, {rat(1)}}, CartierMode::Integral),
      PointOutsideComplex);
}

TEST_CASE("weil classification") {
  WeakTropicalComplex tetra = make_tetrahedron();
  Prng rng(17);
  PLFunction phi = random_integer_pl(rng, tetra.vertex_count(), 6);
  CHECK(is_weil(tetra, div_pl(tetra, phi)).weil);

  WeakTropicalComplex g = make_cycle_graph(4);
  RidgeDivisor any(g.ridge_count());
  any.coeffs[0] = rat(-7);
  any.coeffs[2] = rat(3);
  CHECK(is_weil(g, any).weil);

  // tetrahedron: local systems at all four vertices are always solvable, so
  // the Weil lattice is all of Z^6; brute force over {-2..2}^6 agrees
  IntMatrix lattice = weil_lattice(tetra);
  CHECK(lattice.rows() == 6);
  CHECK(abs(det_integer(lattice)) == 1);
  for (long c0 = -2; c0 <= 2; ++c0)
    for (long c1 = -2; c1 <= 2; ++c1)
      for (long c2 = -2; c2 <= 2; ++c2)
        for (long c3 = -2; c3 <= 2; ++c3)
          for (long c4 = -2; c4 <= 2; ++c4)
            for (long c5 = -2; c5 <= 2; ++c5) {
              RidgeDivisor d(tetra.ridge_count());
              d.coeffs = {rat(c0), rat(c1), rat(c2), rat(c3), rat(c4), rat(c5)};
              if (!is_weil(tetra, d).weil) {
                FAIL("unexpected non-Weil divisor on the tetrahedron");
              }
            }
  SUCCEED("brute force over {-2..2}^6 matched the full lattice");
}

TEST_CASE("weil lattice of a graph is everything") {
  WeakTropicalComplex g = make_cycle_graph(5);
  IntMatrix lattice = weil_lattice(g);
  CHECK(lattice.rows() == 5);
  CHECK(abs(det_integer(lattice)) == 1);
}

TEST_CASE("class group of graphs: free rank 1, torsion = spanning trees") {
  for (const auto& g :
       {make_cycle_graph(4), make_complete_graph(4),
        make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {1, 3}}),
        make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}})}) {
    auto pres = class_group(g, ClassGroupScope::AllRidgeDivisors);
    CHECK(pres.free_rank == 1);
    Int torsion(1);
    for (const auto& f : pres.invariant_factors) torsion *= f;
    CHECK(torsion == spanning_trees(g));
  }
  auto c4 = class_group(make_cycle_graph(4), ClassGroupScope::AllRidgeDivisors);
  CHECK(c4.free_rank == 1);
  REQUIRE(c4.invariant_factors.size() == 1);
  CHECK(c4.invariant_factors[0] == 4);
}

TEST_CASE("class group of the single triangle matches its div matrix") {
  std::vector<SimplexRecord> recs{vertex_record("a"), vertex_record("b"), vertex_record("c"),
                                  edge_record("ab", "a", "b"), edge_record("ac", "a", "c"),
                                  edge_record("bc", "b", "c"),
                                  triangle_record("f", "bc", "ac", "ab")};
  std::map<std::pair<std::string, int>, long> alpha;
  for (const char* e : {"ab", "ac", "bc"}) {
    alpha[{e, 0}] = 1;
    alpha[{e, 1}] = 0;
  }
  WeakTropicalComplex w = make_weak_complex(2, recs, alpha);
  CHECK(class_group(w, ClassGroupScope::AllRidgeDivisors) == cokernel(div_matrix(w)));
}

TEST_CASE("weil lattice is saturated") {
  for (const WeakTropicalComplex& w :
       {make_tetrahedron(), make_ruled_square(), make_cylinder({0, 0, 0, 0})}) {
    IntMatrix lattice = weil_lattice(w);
    IntMatrix sat = saturate(lattice);
    REQUIRE(sat.rows() == lattice.rows());
    for (std::size_t i = 0; i < lattice.rows(); ++i) {
      std::vector<Int> row(lattice.cols());
      for (std::size_t j = 0; j < lattice.cols(); ++j) row[j] = lattice(i, j);
      CHECK(solve_integer(sat.transposed(), row).has_value());
    }
    for (std::size_t i = 0; i < sat.rows(); ++i) {
      std::vector<Int> row(sat.cols());
      for (std::size_t j = 0; j < sat.cols(); ++j) row[j] = sat(i, j);
      CHECK(solve_integer(lattice.transposed(), row).has_value());
    }
  }
}

TEST_CASE("linear equivalence: identical divisors at order 1") {
  WeakTropicalComplex w = make_tetrahedron();
  RidgeDivisor d = divisor_on(w, {{"e01", 2}});
  auto cert = lin_equiv(w, d, d, 1);
  REQUIRE(cert.has_value());
  CHECK(cert->order == 1);
  CHECK(div_pl(w, cert->witness).is_zero());
}

TEST_CASE("twice an edge is equivalent to the parallel mid-cycle at order 2") {
  WeakTropicalComplex w = make_tetrahedron();
  const DeltaComplex& dc = w.complex();
  RidgeDivisor d = divisor_on(w, {{"e01", 2}});

  Subdivision sub = subdivide(w, 2);
  auto mid = [&](const char* e) {
    return sub.map.find_vertex(dc.require(e), {Int(1), Int(1)});
  };
  std::vector<std::pair<int, int>> cycle_edges = {
      {mid("e02"), mid("e12")}, {mid("e03"), mid("e13")},
      {mid("e02"), mid("e03")}, {mid("e12"), mid("e13")}};
  RidgeDivisor mid_cycle(sub.complex.ridge_count(), 2);
  const DeltaComplex& sdc = sub.complex.complex();
  int matched = 0;
  for (std::size_t r = 0; r < sub.complex.ridge_count(); ++r) {
    const auto& verts = sdc.simplex(1, static_cast<int>(r)).vertices;
    for (const auto& [a, b] : cycle_edges)
      if ((verts[0] == a && verts[1] == b) || (verts[0] == b && verts[1] == a)) {
        mid_cycle.coeffs[r] = rat(1);
        ++matched;
      }
  }
  REQUIRE(matched == 4);

  auto cert = lin_equiv(w, d, mid_cycle, 2);
  REQUIRE(cert.has_value());
  CHECK(cert->order == 2);
  CHECK(verify_equivalence(w, d, mid_cycle, *cert));
}

TEST_CASE("inequivalent points on a cycle graph give a bounded negative") {
  WeakTropicalComplex g = make_cycle_graph(3);
  RidgeDivisor d0(g.ridge_count()), d1(g.ridge_count());
  d0.coeffs[0] = rat(1);
  d1.coeffs[1] = rat(1);
  CHECK_FALSE(lin_equiv(g, d0, d1, 3).has_value());
}

TEST_CASE("ruling-line specialization is equivalent to an effective divisor") {
  WeakTropicalComplex sq = make_ruled_square();
  RidgeDivisor rho = assemble_specialization(sq, ruled_square_specialization_table());
  CHECK_FALSE(rho.is_effective());

  auto res = find_effective_equivalent(sq, rho, 2, 4);
  REQUIRE(res.found);
  CHECK(res.order <= 2);
  CHECK(res.representative.is_effective());

  // the search witness doubles as a linear-equivalence certificate
  auto cert = lin_equiv(sq, rho, res.representative, res.order);
  REQUIRE(cert.has_value());
  CHECK(verify_equivalence(sq, rho, res.representative, *cert));
}

TEST_CASE("principal divisors stay Weil on random inputs") {
  Prng rng(23);
  for (const WeakTropicalComplex& w :
       {make_two_triangles(), make_ruled_square(), make_cylinder({1, 1, 0, 0})}) {
    for (int iter = 0; iter < 8; ++iter) {
      PLFunction phi = random_integer_pl(rng, w.vertex_count(), 6);
      CHECK(is_weil(w, div_pl(w, phi)).weil);
    }
  }
}

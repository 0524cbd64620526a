#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "tropx/exact_linalg.hpp"
#include "tropx/prng.hpp"

using namespace tropx;

namespace {

IntMatrix random_int_matrix(Prng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Int(rng.below(-bound, bound));
  return m;
}

IntMatrix random_symmetric(Prng& rng, std::size_t n, long bound) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = Int(rng.below(-bound, bound));
      m(j, i) = m(i, j);
    }
  return m;
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t k, std::size_t limit) {
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> sel(k);
  for (std::size_t i = 0; i < k; ++i) sel[i] = i;
  while (true) {
    all.push_back(sel);
    std::size_t i = k;
    bool moved = false;
    while (i-- > 0) {
      if (sel[i] < limit - (k - i)) {
        ++sel[i];
        for (std::size_t j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return all;
}

// Product of the first k invariant factors equals the gcd of all k x k minors.
Int gcd_of_minors(const IntMatrix& a, std::size_t k) {
  Int g(0);
  for (const auto& rs : k_subsets(k, a.rows()))
    for (const auto& cs : k_subsets(k, a.cols())) {
      IntMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(rs[i], cs[j]);
      g = gcd(g, det_integer(sub));
    }
  return g;
}

}  // namespace

TEST_CASE("solve_rational basic cases") {
  RatMatrix id = RatMatrix::identity(3);
  std::vector<Rat> b{rat(5), rat(-7), rat(1, 2)};
  auto res = solve_rational(id, b);
  REQUIRE(res.consistent());
  CHECK(*res.solution == b);

  RatMatrix a{{rat(1), rat(1)}, {rat(2), rat(2)}};
  auto bad = solve_rational(a, {rat(1), rat(3)});
  REQUIRE_FALSE(bad.consistent());
  REQUIRE(bad.certificate.has_value());
  const auto& y = *bad.certificate;
  // y * A = 0 and y * b != 0, exactly
  CHECK(y[0] * rat(1) + y[1] * rat(2) == rat(0));
  CHECK(y[0] * rat(1) + y[1] * rat(2) == rat(0));
  CHECK(y[0] * rat(1) + y[1] * rat(3) != rat(0));
}

TEST_CASE("solve_rational reproduces the 2x2 subdivision system") {
  RatMatrix a{{rat(2), rat(1)}, {rat(0), rat(1)}};
  auto res = solve_rational(a, {rat(3), rat(1)});
  REQUIRE(res.consistent());
  CHECK((*res.solution)[0] == rat(1));
  CHECK((*res.solution)[1] == rat(1));
}

TEST_CASE("solve_rational never returns both answer and certificate") {
  Prng rng(20240811);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t m = static_cast<std::size_t>(rng.below(1, 4));
    std::size_t n = static_cast<std::size_t>(rng.below(1, 4));
    RatMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rat(rng.below(-4, 4));
    std::vector<Rat> b(m);
    for (auto& v : b) v = rat(rng.below(-4, 4));
    auto res = solve_rational(a, b);
    CHECK(res.solution.has_value() != res.certificate.has_value());
    if (res.consistent()) {
      for (std::size_t i = 0; i < m; ++i) {
        Rat lhs(0);
        for (std::size_t j = 0; j < n; ++j) lhs += a(i, j) * (*res.solution)[j];
        CHECK(lhs == b[i]);
      }
    } else {
      Rat dot(0);
      for (std::size_t j = 0; j < n; ++j) {
        Rat col(0);
        for (std::size_t i = 0; i < m; ++i) col += (*res.certificate)[i] * a(i, j);
        CHECK(col == rat(0));
      }
      for (std::size_t i = 0; i < m; ++i) dot += (*res.certificate)[i] * b[i];
      CHECK(dot != rat(0));
    }
  }
}

TEST_CASE("smith normal form small cases") {
  IntMatrix a{{Int(2), Int(0)}, {Int(0), Int(0)}};
  auto snf = smith_normal_form(a);
  REQUIRE(snf.rank == 1);
  CHECK(snf.diagonal[0] == 2);

  IntMatrix b{{Int(2), Int(4)}, {Int(6), Int(8)}};
  auto snf2 = smith_normal_form(b);
  REQUIRE(snf2.rank == 2);
  CHECK(snf2.diagonal[0] == 2);
  CHECK(snf2.diagonal[1] == 4);
}

TEST_CASE("smith normal form against gcd-of-minors oracle") {
  Prng rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t m = static_cast<std::size_t>(rng.below(1, 5));
    std::size_t n = static_cast<std::size_t>(rng.below(1, 5));
    IntMatrix a = random_int_matrix(rng, m, n, 6);
    auto snf = smith_normal_form(a);
    CHECK(snf.u * a * snf.v == snf.s);
    CHECK(abs(det_integer(snf.u)) == 1);
    CHECK(abs(det_integer(snf.v)) == 1);
    Int prod(1);
    for (std::size_t k = 1; k <= snf.rank; ++k) {
      prod *= snf.diagonal[k - 1];
      CHECK(prod == gcd_of_minors(a, k));
      if (k >= 2) CHECK(snf.diagonal[k - 1] % snf.diagonal[k - 2] == 0);
    }
    if (snf.rank < std::min(m, n)) CHECK(gcd_of_minors(a, snf.rank + 1) == 0);
  }
}

TEST_CASE("cokernel presentations") {
  CHECK(cokernel(IntMatrix(3, 0)).is_free_of_rank(3));

  IntMatrix d{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(5)}};
  auto pres = cokernel(d);
  CHECK(pres.free_rank == 0);
  REQUIRE(pres.invariant_factors.size() == 1);
  CHECK(pres.invariant_factors[0] == 5);

  // graph Laplacian of the 4-cycle: Z + Z/4
  IntMatrix lap{{Int(2), Int(-1), Int(0), Int(-1)},
                {Int(-1), Int(2), Int(-1), Int(0)},
                {Int(0), Int(-1), Int(2), Int(-1)},
                {Int(-1), Int(0), Int(-1), Int(2)}};
  auto cyc = cokernel(lap);
  CHECK(cyc.free_rank == 1);
  REQUIRE(cyc.invariant_factors.size() == 1);
  CHECK(cyc.invariant_factors[0] == 4);
}

TEST_CASE("cokernel invariant under unimodular changes") {
  Prng rng(99);
  for (int iter = 0; iter < 20; ++iter) {
    std::size_t m = static_cast<std::size_t>(rng.below(2, 4));
    std::size_t n = static_cast<std::size_t>(rng.below(2, 4));
    IntMatrix a = random_int_matrix(rng, m, n, 5);
    // random unimodular transforms built from elementary operations
    IntMatrix p = IntMatrix::identity(m), q = IntMatrix::identity(n);
    for (int k = 0; k < 6; ++k) {
      std::size_t i = static_cast<std::size_t>(rng.below(0, static_cast<long>(m - 1)));
      std::size_t j = static_cast<std::size_t>(rng.below(0, static_cast<long>(m - 1)));
      if (i != j) p.add_row(i, j, Int(rng.below(-2, 2)));
      std::size_t s = static_cast<std::size_t>(rng.below(0, static_cast<long>(n - 1)));
      std::size_t t = static_cast<std::size_t>(rng.below(0, static_cast<long>(n - 1)));
      if (s != t) q.add_col(s, t, Int(rng.below(-2, 2)));
    }
    CHECK(cokernel(a) == cokernel(p * a * q));
  }
}

TEST_CASE("saturation") {
  IntMatrix l{{Int(2), Int(0)}, {Int(0), Int(2)}};
  auto sat = saturate(l);
  REQUIRE(sat.rows() == 2);
  CHECK(abs(det_integer(sat)) == 1);

  IntMatrix single(1, 2);
  single(0, 0) = 2;
  single(0, 1) = 4;
  auto sat2 = saturate(single);
  REQUIRE(sat2.rows() == 1);
  CHECK(abs(sat2(0, 0)) == 1);
  CHECK(abs(sat2(0, 1)) == 2);
}

TEST_CASE("saturation is idempotent and contains the input") {
  Prng rng(4242);
  for (int iter = 0; iter < 25; ++iter) {
    IntMatrix l = random_int_matrix(rng, 2, 4, 4);
    auto sat = saturate(l);
    // every row of l is an integer combination of sat's rows
    for (std::size_t i = 0; i < l.rows(); ++i) {
      std::vector<Int> b(l.cols());
      for (std::size_t j = 0; j < l.cols(); ++j) b[j] = l(i, j);
      CHECK(solve_integer(sat.transposed(), b).has_value());
    }
    auto again = saturate(sat);
    REQUIRE(again.rows() == sat.rows());
    for (std::size_t i = 0; i < sat.rows(); ++i) {
      std::vector<Int> b(sat.cols());
      for (std::size_t j = 0; j < sat.cols(); ++j) b[j] = sat(i, j);
      CHECK(solve_integer(again.transposed(), b).has_value());
    }
    // index check: rank-2 sublattice index in its saturation = d1*d2
    auto snf = smith_normal_form(l);
    if (snf.rank == 2) {
      Int expected_index = snf.diagonal[0] * snf.diagonal[1];
      CHECK(expected_index >= 1);
    }
  }
}

TEST_CASE("inertia on pinned examples") {
  IntMatrix m{{Int(-1), Int(1), Int(1)}, {Int(1), Int(-1), Int(1)}, {Int(1), Int(1), Int(-1)}};
  CHECK(inertia(m) == InertiaTriple{1, 0, 2});
  CHECK(inertia(IntMatrix(3, 3)) == InertiaTriple{0, 3, 0});
  CHECK(inertia(IntMatrix::identity(4)) == InertiaTriple{4, 0, 0});
  CHECK_THROWS_AS(inertia(IntMatrix{{Int(0), Int(1)}, {Int(2), Int(0)}}), NotSymmetric);
}

TEST_CASE("characteristic polynomial sanity") {
  IntMatrix m{{Int(2), Int(1)}, {Int(1), Int(2)}};
  auto p = characteristic_polynomial(m);  // x^2 - 4x + 3
  REQUIRE(p.size() == 3);
  CHECK(p[0] == 3);
  CHECK(p[1] == -4);
  CHECK(p[2] == 1);
  // constant term = (-1)^n det
  Prng rng(5);
  for (int iter = 0; iter < 15; ++iter) {
    IntMatrix a = random_int_matrix(rng, 4, 4, 5);
    auto cp = characteristic_polynomial(a);
    CHECK(cp[0] == det_integer(a));  // n = 4 even
  }
}

TEST_CASE("solve_integer and integer_kernel") {
  IntMatrix a{{Int(2), Int(4)}, {Int(0), Int(3)}};
  auto x = solve_integer(a, {Int(6), Int(3)});
  REQUIRE(x.has_value());
  CHECK(a * *x == std::vector<Int>{Int(6), Int(3)});
  CHECK_FALSE(solve_integer(a, {Int(1), Int(0)}).has_value());

  IntMatrix b{{Int(1), Int(2), Int(3)}};
  auto ker = integer_kernel(b);
  REQUIRE(ker.rows() == 2);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    CHECK(ker(i, 0) * 1 + ker(i, 1) * 2 + ker(i, 2) * 3 == 0);
  // saturated: (1,1,-1) lies in the kernel and must be reachable over Z
  CHECK(solve_integer(ker.transposed(), {Int(1), Int(1), Int(-1)}).has_value());
}

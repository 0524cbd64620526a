#pragma once

// Divisors of PL functions, coarse specializations, the Cartier/Q-Cartier/
// Weil classification via local linear systems, divisor class groups, and
// linear-equivalence search by subdivision order.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropx/divisor_types.hpp"
#include "tropx/exact_linalg.hpp"
#include "tropx/subdivision.hpp"
#include "tropx/tropical_complex.hpp"

namespace tropx {

struct NonIntegralSlopes : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnknownRidgeId : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Integral slopes: within every simplex, pairwise vertex-value differences
// are integers. Checking all edges suffices, since any vertex pair of a
// simplex spans one of its edge faces.
inline bool has_integral_slopes(const WeakTropicalComplex& w, const PLFunction& phi) {
  const DeltaComplex& dc = w.complex();
  for (std::size_t e = 0; e < dc.count(1); ++e) {
    const auto& verts = dc.simplex(1, static_cast<int>(e)).vertices;
    if (!is_integer(phi.values[verts[0]] - phi.values[verts[1]])) return false;
  }
  return true;
}

// The divisor of a simplexwise-linear function: at a ridge contained in at
// least one facet the coefficient is
//   sum_{facets f containing r} phi(v_{f,r}) - sum_{v in r} alpha(v,r) phi(v);
// at a facetless ridge it is -sum_{v in r} alpha(v,r) phi(v).
inline RidgeDivisor div_pl(const WeakTropicalComplex& w, const PLFunction& phi) {
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  if (phi.values.size() != dc.count(0))
    throw std::invalid_argument("PL function has wrong number of vertex values");
  if (!has_integral_slopes(w, phi))
    throw NonIntegralSlopes("PL function does not have integral slopes");
  RidgeDivisor out(w.ridge_count(), phi.order);
  for (std::size_t r = 0; r < w.ridge_count(); ++r) {
    Rat coeff(0);
    for (const auto& inc : dc.cofaces(n - 1, static_cast<int>(r))) {
      int opp = dc.simplex(n, inc.simplex).vertices[inc.position];
      coeff += phi.values[opp];
    }
    const auto& verts = dc.simplex(n - 1, static_cast<int>(r)).vertices;
    for (int p = 0; p < n; ++p) coeff -= Rat(w.alpha(static_cast<int>(r), p)) * phi.values[verts[p]];
    out.coeffs[r] = coeff;
  }
  return out;
}

// Matrix of div over vertex indicator functions: rows = ridges, columns =
// vertices. Integer by construction.
inline IntMatrix div_matrix(const WeakTropicalComplex& w) {
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  IntMatrix m(w.ridge_count(), dc.count(0));
  for (std::size_t r = 0; r < w.ridge_count(); ++r) {
    for (const auto& inc : dc.cofaces(n - 1, static_cast<int>(r))) {
      int opp = dc.simplex(n, inc.simplex).vertices[inc.position];
      m(r, opp) += 1;
    }
    const auto& verts = dc.simplex(n - 1, static_cast<int>(r)).vertices;
    for (int p = 0; p < n; ++p) m(r, verts[p]) -= w.alpha(static_cast<int>(r), p);
  }
  return m;
}

// rho(D) = sum_r deg(Dbar . C_r) [r], assembled from user-supplied
// intersection numbers keyed by ridge id. Missing ridges count as zero.
inline RidgeDivisor assemble_specialization(const WeakTropicalComplex& w,
                                            const std::map<std::string, Int>& intersections) {
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  RidgeDivisor out(w.ridge_count());
  for (const auto& [id, value] : intersections) {
    SimplexId s = dc.find(id);
    if (!s.valid() || s.dim != n - 1)
      throw UnknownRidgeId("not a ridge id: " + id);
    out.coeffs[s.index] = Rat(value);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local systems: Cartier / Q-Cartier / Weil
// ---------------------------------------------------------------------------

namespace detail {

// Closed-star system at a simplex s: unknowns are simplexwise-linear vertex
// values on the closed star, one equation per ridge containing s.
struct LocalSystem {
  std::vector<int> star_vertices;   // global vertex indices
  std::vector<int> ridges;          // constrained ridges (indices)
  IntMatrix a;                      // ridges x star_vertices
};

inline LocalSystem local_system(const WeakTropicalComplex& w, SimplexId s) {
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  LocalSystem sys;
  // ridges containing s: upward closure
  std::set<std::pair<int, int>> frontier{{s.dim, s.index}};
  std::set<int> ridge_set;
  std::set<int> vertex_set;
  std::set<std::pair<int, int>> seen = frontier;
  std::vector<std::pair<int, int>> queue(frontier.begin(), frontier.end());
  while (!queue.empty()) {
    auto [d, i] = queue.back();
    queue.pop_back();
    for (int v : dc.simplex(d, i).vertices) vertex_set.insert(v);
    if (d == n - 1) ridge_set.insert(i);
    for (const auto& inc : dc.cofaces(d, i))
      if (seen.insert({d + 1, inc.simplex}).second) queue.push_back({d + 1, inc.simplex});
  }
  sys.star_vertices.assign(vertex_set.begin(), vertex_set.end());
  sys.ridges.assign(ridge_set.begin(), ridge_set.end());
  std::map<int, int> col_of;
  for (std::size_t i = 0; i < sys.star_vertices.size(); ++i) col_of[sys.star_vertices[i]] = static_cast<int>(i);
  sys.a = IntMatrix(sys.ridges.size(), sys.star_vertices.size());
  for (std::size_t k = 0; k < sys.ridges.size(); ++k) {
    int r = sys.ridges[k];
    for (const auto& inc : dc.cofaces(n - 1, r)) {
      int opp = dc.simplex(n, inc.simplex).vertices[inc.position];
      sys.a(k, col_of.at(opp)) += 1;
    }
    const auto& verts = dc.simplex(n - 1, r).vertices;
    for (int p = 0; p < n; ++p) sys.a(k, col_of.at(verts[p])) -= w.alpha(r, p);
  }
  return sys;
}

}  // namespace detail

enum class CartierMode { Integral, Rational };

struct CartierResult {
  bool cartier = false;
  SimplexId at;                        // minimal simplex of the tested point
  std::vector<int> star_vertices;      // certificate support
  std::optional<std::vector<Rat>> certificate;  // vertex values on the star
};

// Decides whether D is locally the divisor of a simplexwise-linear function
// near p: integral mode asks for integer slopes (Cartier), rational mode for
// a rational witness (equivalently Q-Cartier, by scaling). The certificate
// family is simplexwise-linear functions on the closed star of the minimal
// simplex containing p.
inline CartierResult is_cartier_at(const WeakTropicalComplex& w, const RidgeDivisor& d,
                                   const RationalPoint& p, CartierMode mode) {
  const DeltaComplex& dc = w.complex();
  if (d.order != 1 || d.coeffs.size() != w.ridge_count())
    throw std::invalid_argument("is_cartier_at expects a divisor on the given complex");
  RationalPoint q = normalize_point(dc, p);
  detail::LocalSystem sys = detail::local_system(w, q.host);
  CartierResult res;
  res.at = q.host;
  res.star_vertices = sys.star_vertices;
  if (mode == CartierMode::Rational) {
    RatMatrix a = to_rational(sys.a);
    std::vector<Rat> rhs;
    for (int r : sys.ridges) rhs.push_back(d.coeffs[r]);
    auto sol = solve_rational(a, rhs);
    res.cartier = sol.consistent();
    if (sol.consistent()) res.certificate = *sol.solution;
  } else {
    std::vector<Int> rhs;
    for (int r : sys.ridges) {
      if (!is_integer(d.coeffs[r])) {
        res.cartier = false;  // integral-slope divisors have integer coefficients
        return res;
      }
      rhs.push_back(to_int(d.coeffs[r]));
    }
    auto sol = solve_integer(sys.a, rhs);
    res.cartier = sol.has_value();
    if (sol) {
      std::vector<Rat> cert;
      for (const auto& v : *sol) cert.push_back(Rat(v));
      res.certificate = std::move(cert);
    }
  }
  return res;
}

struct WeilResult {
  bool weil = true;
  std::vector<SimplexId> failing;
};

// Weil = the local rational system is solvable at every (n-2)-simplex, and
// every facetless ridge's one-equation condition is satisfiable.
inline WeilResult is_weil(const WeakTropicalComplex& w, const RidgeDivisor& d) {
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  WeilResult res;
  if (n >= 2) {
    for (std::size_t q = 0; q < dc.count(n - 2); ++q) {
      detail::LocalSystem sys = detail::local_system(w, SimplexId{n - 2, static_cast<int>(q)});
      RatMatrix a = to_rational(sys.a);
      std::vector<Rat> rhs;
      for (int r : sys.ridges) rhs.push_back(d.coeffs[r]);
      if (!solve_rational(a, rhs).consistent()) {
        res.weil = false;
        res.failing.push_back(SimplexId{n - 2, static_cast<int>(q)});
      }
    }
  }
  // facetless ridges: -sum alpha(v_i, r) c_i = a_r is unsolvable only when
  // all alpha vanish and a_r != 0
  for (std::size_t r = 0; r < w.ridge_count(); ++r) {
    if (dc.ridge_degree(static_cast<int>(r)) > 0) continue;
    bool all_zero = true;
    for (int p = 0; p < n; ++p)
      if (w.alpha(static_cast<int>(r), p) != 0) all_zero = false;
    if (all_zero && d.coeffs[r] != 0) {
      res.weil = false;
      res.failing.push_back(SimplexId{n - 1, static_cast<int>(r)});
    }
  }
  return res;
}

// Basis (rows) of the saturated lattice of integer Weil ridge divisors,
// assembled from the rational solvability conditions at every (n-2)-simplex.
inline IntMatrix weil_lattice(const WeakTropicalComplex& w) {
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  const std::size_t ridges = w.ridge_count();
  std::vector<std::vector<Rat>> constraint_rows;
  if (n >= 2) {
    for (std::size_t q = 0; q < dc.count(n - 2); ++q) {
      detail::LocalSystem sys = detail::local_system(w, SimplexId{n - 2, static_cast<int>(q)});
      for (const auto& y : rational_left_kernel(to_rational(sys.a))) {
        std::vector<Rat> row(ridges, Rat(0));
        for (std::size_t k = 0; k < sys.ridges.size(); ++k) row[sys.ridges[k]] += y[k];
        constraint_rows.push_back(std::move(row));
      }
    }
  }
  for (std::size_t r = 0; r < ridges; ++r) {
    if (dc.ridge_degree(static_cast<int>(r)) > 0) continue;
    bool all_zero = true;
    for (int p = 0; p < n; ++p)
      if (w.alpha(static_cast<int>(r), p) != 0) all_zero = false;
    if (all_zero) {
      std::vector<Rat> row(ridges, Rat(0));
      row[r] = Rat(1);
      constraint_rows.push_back(std::move(row));
    }
  }
  if (constraint_rows.empty()) return IntMatrix::identity(ridges);
  // clear denominators row-wise, then take the saturated integer kernel
  IntMatrix c(constraint_rows.size(), ridges);
  for (std::size_t i = 0; i < constraint_rows.size(); ++i) {
    Int den(1);
    for (const auto& v : constraint_rows[i]) den = lcm(den, v.get_den());
    for (std::size_t j = 0; j < ridges; ++j) c(i, j) = to_int(constraint_rows[i][j] * Rat(den));
  }
  return integer_kernel(c);
}

enum class ClassGroupScope { AllRidgeDivisors, WeilOnly };

// Group of (integer) ridge divisors modulo divisors of simplexwise-linear
// functions, optionally restricted to the Weil lattice.
inline AbelianGroupPresentation class_group(const WeakTropicalComplex& w, ClassGroupScope scope) {
  IntMatrix div = div_matrix(w);
  if (scope == ClassGroupScope::AllRidgeDivisors) return cokernel(div);
  IntMatrix basis = weil_lattice(w);  // k x R, rows span the Weil lattice
  IntMatrix bt = basis.transposed();
  IntMatrix coords(basis.rows(), div.cols());
  for (std::size_t v = 0; v < div.cols(); ++v) {
    std::vector<Int> col(div.rows());
    for (std::size_t r = 0; r < div.rows(); ++r) col[r] = div(r, v);
    auto sol = solve_integer(bt, col);
    if (!sol) throw std::logic_error("principal divisor is not in the Weil lattice");
    for (std::size_t k = 0; k < basis.rows(); ++k) coords(k, v) = (*sol)[k];
  }
  return cokernel(coords);
}

// ---------------------------------------------------------------------------
// Linear equivalence by subdivision order
// ---------------------------------------------------------------------------

struct LinearEquivalenceCertificate {
  int order = 1;
  PLFunction witness;  // integer vertex values on the order-m subdivision
};

// Verifies div(witness) == (D - D') expressed on the certificate's order.
inline bool verify_equivalence(const WeakTropicalComplex& w, const RidgeDivisor& d,
                               const RidgeDivisor& dprime,
                               const LinearEquivalenceCertificate& cert) {
  Subdivision sub = subdivide(w, cert.order);
  Subdivision sub_d = subdivide(w, d.order);
  Subdivision sub_dp = subdivide(w, dprime.order);
  RidgeDivisor dm = re_express(d, sub_d.map, sub.map, sub.complex);
  RidgeDivisor dpm = re_express(dprime, sub_dp.map, sub.map, sub.complex);
  return div_pl(sub.complex, cert.witness) == dm - dpm;
}

// Searches orders m <= max_order (multiples of both divisors' orders) for a
// simplexwise-linear integer witness with div = D - D'. Integrality is a
// lattice-membership question since adding constants does not change div.
inline std::optional<LinearEquivalenceCertificate> lin_equiv(const WeakTropicalComplex& w,
                                                             const RidgeDivisor& d,
                                                             const RidgeDivisor& dprime,
                                                             int max_order) {
  const int step = d.order / std::gcd(d.order, dprime.order) * dprime.order;
  for (int m = step; m <= max_order; m += step) {
    Subdivision sub = subdivide(w, m);
    Subdivision sub_d = d.order == m ? Subdivision{} : subdivide(w, d.order);
    Subdivision sub_dp = dprime.order == m ? Subdivision{} : subdivide(w, dprime.order);
    RidgeDivisor dm = d.order == m ? d : re_express(d, sub_d.map, sub.map, sub.complex);
    RidgeDivisor dpm = dprime.order == m ? dprime : re_express(dprime, sub_dp.map, sub.map, sub.complex);
    RidgeDivisor target = dm - dpm;
    if (!target.is_integral()) return std::nullopt;  // no integral-slope witness can exist
    std::vector<Int> t;
    for (const auto& c : target.coeffs) t.push_back(to_int(c));
    auto sol = solve_integer(div_matrix(sub.complex), t);
    if (sol) {
      LinearEquivalenceCertificate cert;
      cert.order = m;
      cert.witness = PLFunction(sub.complex.vertex_count(), m);
      for (std::size_t i = 0; i < sol->size(); ++i) cert.witness.values[i] = Rat((*sol)[i]);
      if (!(div_pl(sub.complex, cert.witness) == target))
        throw std::logic_error("linear equivalence certificate failed re-verification");
      return cert;
    }
  }
  return std::nullopt;
}

}  // namespace tropx

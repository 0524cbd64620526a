#pragma once

// Weak tropical complexes: a regular Delta-complex together with integer
// structure constants alpha(v, r) attached to each (ridge, vertex position),
// subject to the ridge identity  sum_v alpha(v, r) = deg r.
//
// Structure constants are indexed by vertex *position* within the ridge's
// ordered vertex list, not by vertex id, so parallel ridges on the same
// vertex set stay unambiguous.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tropx/delta_complex.hpp"
#include "tropx/exact_linalg.hpp"
#include "tropx/matrix.hpp"
#include "tropx/rational.hpp"

namespace tropx {

struct RidgeIdentityViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WrongDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class WeakTropicalComplex {
 public:
  WeakTropicalComplex() = default;

  // alpha entries keyed by (ridge index, vertex position). For n = 1 the
  // ridge identity pins alpha(v, v) = deg v; missing entries are filled in
  // and contradictory ones rejected.
  static WeakTropicalComplex make(DeltaComplex complex,
                                  std::map<std::pair<int, int>, Int> alpha) {
    WeakTropicalComplex w;
    w.complex_ = std::move(complex);
    const int n = w.complex_.dimension();
    const std::size_t ridges = w.complex_.count(n - 1);
    w.alpha_.assign(ridges, std::vector<Int>(static_cast<std::size_t>(n), Int(0)));
    std::vector<std::vector<char>> given(ridges, std::vector<char>(static_cast<std::size_t>(n), 0));
    for (const auto& [key, value] : alpha) {
      auto [ridge, pos] = key;
      if (ridge < 0 || ridge >= static_cast<int>(ridges) || pos < 0 || pos >= n)
        throw std::out_of_range("structure constant out of range");
      w.alpha_[ridge][pos] = value;
      given[ridge][pos] = 1;
    }
    if (n == 1) {
      for (std::size_t r = 0; r < ridges; ++r) {
        Int deg(w.complex_.ridge_degree(static_cast<int>(r)));
        if (given[r][0] && w.alpha_[r][0] != deg)
          throw RidgeIdentityViolated("vertex " + w.complex_.simplex(0, static_cast<int>(r)).id +
                                      ": structure constant must equal its valence");
        w.alpha_[r][0] = deg;
      }
    } else {
      for (std::size_t r = 0; r < ridges; ++r)
        for (int p = 0; p < n; ++p)
          if (!given[r][p])
            throw std::invalid_argument("missing structure constant for ridge " +
                                        w.complex_.simplex(n - 1, static_cast<int>(r)).id +
                                        " position " + std::to_string(p));
    }
    return w;
  }

  const DeltaComplex& complex() const { return complex_; }
  int dimension() const { return complex_.dimension(); }
  std::size_t ridge_count() const { return complex_.count(dimension() - 1); }
  std::size_t facet_count() const { return complex_.count(dimension()); }
  std::size_t vertex_count() const { return complex_.count(0); }

  const Int& alpha(int ridge, int pos) const { return alpha_[ridge][pos]; }

  // ---------------------------------------------------------------------
  // Ridge identity (report per ridge, never throws)
  // ---------------------------------------------------------------------
  struct RidgeReport {
    std::string ridge_id;
    Int alpha_sum;
    int degree = 0;
    bool ok = false;
  };

  std::vector<RidgeReport> validate_ridge_identity() const {
    const int n = dimension();
    std::vector<RidgeReport> out;
    for (std::size_t r = 0; r < ridge_count(); ++r) {
      RidgeReport rep;
      rep.ridge_id = complex_.simplex(n - 1, static_cast<int>(r)).id;
      rep.degree = complex_.ridge_degree(static_cast<int>(r));
      Int sum(0);
      for (int p = 0; p < n; ++p) sum += alpha_[r][p];
      rep.alpha_sum = sum;
      rep.ok = (sum == rep.degree);
      out.push_back(std::move(rep));
    }
    return out;
  }

  bool is_weak() const {
    for (const auto& rep : validate_ridge_identity())
      if (!rep.ok) return false;
    return true;
  }

  void require_weak() const {
    for (const auto& rep : validate_ridge_identity())
      if (!rep.ok)
        throw RidgeIdentityViolated("ridge " + rep.ridge_id + ": alpha sum " +
                                    rep.alpha_sum.get_str() + " != degree " +
                                    std::to_string(rep.degree));
  }

  // ---------------------------------------------------------------------
  // Local intersection matrices and the tropical condition
  // ---------------------------------------------------------------------
  struct LocalIntersectionMatrix {
    int corner = -1;            // index of the (n-2)-simplex q
    std::vector<int> ridges;    // ridge indices labelling rows/columns
    std::vector<int> opposite;  // per ridge, position of the vertex not in q
    IntMatrix matrix;
  };

  LocalIntersectionMatrix local_intersection_matrix(int q) const {
    const int n = dimension();
    if (n < 2) throw WrongDimension("local intersection matrices need dimension >= 2");
    if (q < 0 || q >= static_cast<int>(complex_.count(n - 2)))
      throw WrongDimension("no such (n-2)-simplex");
    LocalIntersectionMatrix lm;
    lm.corner = q;
    for (const auto& cf : complex_.cofaces(n - 2, q)) {
      lm.ridges.push_back(cf.simplex);
      lm.opposite.push_back(cf.position);  // face at position p omits vertex p
    }
    const std::size_t k = lm.ridges.size();
    lm.matrix = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      lm.matrix(i, i) = -alpha_[lm.ridges[i]][lm.opposite[i]];
      for (std::size_t j = i + 1; j < k; ++j) {
        int common = 0;
        for (const auto& cfi : complex_.cofaces(n - 1, lm.ridges[i]))
          for (const auto& cfj : complex_.cofaces(n - 1, lm.ridges[j]))
            if (cfi.simplex == cfj.simplex) ++common;
        lm.matrix(i, j) = Int(common);
        lm.matrix(j, i) = Int(common);
      }
    }
    return lm;
  }

  // True iff every local intersection matrix has exactly one positive
  // eigenvalue; vacuous in dimension 1. Failing (n-2)-simplices reported.
  struct TropicalReport {
    bool tropical = true;
    std::vector<int> failing;  // (n-2)-simplex indices
  };

  TropicalReport tropical_report() const {
    TropicalReport rep;
    const int n = dimension();
    if (n < 2) return rep;
    for (std::size_t q = 0; q < complex_.count(n - 2); ++q) {
      auto lm = local_intersection_matrix(static_cast<int>(q));
      if (inertia(lm.matrix).n_plus != 1) {
        rep.tropical = false;
        rep.failing.push_back(static_cast<int>(q));
      }
    }
    return rep;
  }

  bool is_tropical_complex() const { return tropical_report().tropical; }

  // K = sum_r (deg r - 2) [r], as a dense coefficient vector over ridges.
  std::vector<Rat> canonical_divisor_coeffs() const {
    std::vector<Rat> coeffs(ridge_count(), Rat(0));
    for (std::size_t r = 0; r < ridge_count(); ++r)
      coeffs[r] = Rat(complex_.ridge_degree(static_cast<int>(r)) - 2);
    return coeffs;
  }

  long euler_characteristic() const { return complex_.euler_characteristic(); }

 private:
  DeltaComplex complex_;
  std::vector<std::vector<Int>> alpha_;  // [ridge][vertex position]
};

// Builds the weak tropical complex of a degeneration from its dual complex
// and the intersection numbers deg(C_v . C_r): alpha(v, r) = -deg(C_v . C_r).
// Inconsistent input (ridge identity fails) is rejected.
inline WeakTropicalComplex from_degeneration_data(
    DeltaComplex complex, const std::map<std::pair<int, int>, Int>& intersections) {
  std::map<std::pair<int, int>, Int> alpha;
  for (const auto& [key, value] : intersections) alpha[key] = -value;
  const int n = complex.dimension();
  if (n == 1) {
    // alpha(v, v) = deg v is forced; WeakTropicalComplex::make both fills and
    // cross-checks, so just pass the negated numbers through.
  }
  WeakTropicalComplex w = WeakTropicalComplex::make(std::move(complex), std::move(alpha));
  w.require_weak();
  return w;
}

}  // namespace tropx

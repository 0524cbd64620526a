#pragma once

// The 2-dimensional worked examples as executable machinery: cylinder
// calibration against its four reported consequences, h^0 lower bounds with
// re-verifiable certificates, bounded upper-bound exhaustions, the
// disjoint-representative self-pairing, and the Riemann-Roch inequality
// checker.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tropx/divisor.hpp"
#include "tropx/examples.hpp"
#include "tropx/pl_search.hpp"
#include "tropx/subdivision.hpp"

namespace tropx {

// ---------------------------------------------------------------------------
// Cylinder calibration
// ---------------------------------------------------------------------------

// The figure's boundary constants are not recoverable from text, so the
// cylinder is parameterized and calibrated against the reported
// consequences: tropicality, Weil lattice of rank 4, Weil class group Z,
// and a certified equivalence 2([t]+[c]-[e]) ~ (sum of the top edges).
struct CylinderCalibrationHit {
  CylinderConstants constants;
  std::string dprime_plus_a, dprime_plus_b, dprime_minus;  // D' = [a]+[b]-[e]
  LinearEquivalenceCertificate certificate;                // for 2D' ~ D
};

struct CylinderCalibration {
  long box = 3;  // |alpha| <= box on boundary edges
  std::vector<CylinderConstants> tropical;          // passing (a)
  std::vector<CylinderConstants> rank4_class_z;     // passing (a)-(c)
  std::vector<CylinderCalibrationHit> hits;         // passing (a)-(d)
};

inline CylinderCalibration calibrate_cylinder(long box = 3, int max_order = 2) {
  CylinderCalibration out;
  out.box = box;
  static const char* kEdges[8] = {"t0", "t1", "b0", "b1", "u0", "u1", "d0", "d1"};
  for (long p0 = 1 - box; p0 <= box; ++p0)
    for (long p1 = 1 - box; p1 <= box; ++p1)
      for (long p2 = 1 - box; p2 <= box; ++p2)
        for (long p3 = 1 - box; p3 <= box; ++p3) {
          CylinderConstants c{p0, p1, p2, p3};
          WeakTropicalComplex w = make_cylinder(c);
          if (!w.is_tropical_complex()) continue;
          out.tropical.push_back(c);
          if (weil_lattice(w).rows() != 4) continue;
          if (!class_group(w, ClassGroupScope::WeilOnly).is_free_of_rank(1)) continue;
          out.rank4_class_z.push_back(c);

          const DeltaComplex& dc = w.complex();
          RidgeDivisor top(w.ridge_count());
          top.coeffs[dc.require("t0").index] = rat(1);
          top.coeffs[dc.require("t1").index] = rat(1);

          // shared solver per order: 2 D' - D must be a divisor of a
          // simplexwise-linear integer function
          bool found = false;
          CylinderCalibrationHit hit;
          for (int m = 1; m <= max_order && !found; ++m) {
            Subdivision sub = subdivide(w, m);
            IntegerLinearSolver solver(div_matrix(sub.complex));
            RidgeDivisor top_m = express_on_subdivision(top, sub.map, sub.complex);
            for (const char* t : {"t0", "t1"}) {
              for (const char* cc : kEdges) {
                if (std::string(cc) == t) continue;
                for (const char* e : kEdges) {
                  if (std::string(e) == t || std::string(e) == cc) continue;
                  RidgeDivisor dp(w.ridge_count());
                  dp.coeffs[dc.require(t).index] += rat(1);
                  dp.coeffs[dc.require(cc).index] += rat(1);
                  dp.coeffs[dc.require(e).index] -= rat(1);
                  if (!is_weil(w, dp).weil) continue;
                  RidgeDivisor target =
                      express_on_subdivision(dp * rat(2), sub.map, sub.complex) - top_m;
                  std::vector<Int> rhs;
                  for (const auto& v : target.coeffs) rhs.push_back(to_int(v));
                  auto sol = solver.solve(rhs);
                  if (!sol) continue;
                  hit.constants = c;
                  hit.dprime_plus_a = t;
                  hit.dprime_plus_b = cc;
                  hit.dprime_minus = e;
                  hit.certificate.order = m;
                  hit.certificate.witness = PLFunction(sub.complex.vertex_count(), m);
                  for (std::size_t i = 0; i < sol->size(); ++i)
                    hit.certificate.witness.values[i] = Rat((*sol)[i]);
                  if (!verify_equivalence(w, dp * rat(2), top, hit.certificate))
                    throw std::logic_error("calibration certificate failed re-verification");
                  found = true;
                  break;
                }
                if (found) break;
              }
              if (found) break;
            }
          }
          if (found) out.hits.push_back(std::move(hit));
        }
  return out;
}

// Constants shipped as the calibrated fixture: the lexicographically first
// assignment passing the full calibration.
inline CylinderConstants calibrated_cylinder_constants() { return {-1, -1, 1, 1}; }

// ---------------------------------------------------------------------------
// Point coverage on subdivisions
// ---------------------------------------------------------------------------

namespace detail {

// Ridges of the subdivision whose closed realization contains the point.
inline std::vector<int> ridges_containing_point(const WeakTropicalComplex& base,
                                                const Subdivision& sub, const RationalPoint& p) {
  RationalPoint q = normalize_point(base.complex(), p);
  const int ridge_dim = base.dimension() - 1;
  std::vector<int> hits;
  const Rat scale(1, sub.map.order);
  for (std::size_t r = 0; r < sub.complex.ridge_count(); ++r) {
    const auto& geom = sub.map.ridge_geometry[r];
    // the point's minimal host must be a face of (or equal to) the ridge's
    if (!(geom.host == q.host)) {
      // lift q's coords into geom.host coordinates if q.host is a face
      bool face = false;
      std::vector<int> sel(q.host.dim + 1);
      for (int i = 0; i <= q.host.dim; ++i) sel[i] = i;
      if (q.host.dim <= geom.host.dim) {
        while (true) {
          if (base.complex().face_by_positions(geom.host, sel) == q.host) {
            face = true;
            break;
          }
          int i = q.host.dim;
          bool moved = false;
          for (; i >= 0; --i)
            if (sel[i] < geom.host.dim - (q.host.dim - i)) {
              ++sel[i];
              for (int j = i + 1; j <= q.host.dim; ++j) sel[j] = sel[j - 1] + 1;
              moved = true;
              break;
            }
          if (!moved) break;
        }
      }
      if (!face) continue;
      std::vector<Rat> lifted(static_cast<std::size_t>(geom.host.dim + 1), Rat(0));
      for (std::size_t i = 0; i < sel.size(); ++i) lifted[sel[i]] = q.coords[i];
      // containment in the segment/point spanned by the endpoints
      if (ridge_dim == 0) {
        bool eq = true;
        for (std::size_t i = 0; i < lifted.size(); ++i)
          if (lifted[i] != Rat(geom.endpoint_coords[0][i]) * scale) eq = false;
        if (eq) hits.push_back(static_cast<int>(r));
      } else {
        const auto& A = geom.endpoint_coords[0];
        const auto& B = geom.endpoint_coords[1];
        std::optional<Rat> t;
        bool ok = true;
        for (std::size_t i = 0; i < lifted.size() && ok; ++i) {
          Rat lhs = lifted[i] - Rat(A[i]) * scale;
          Rat dir = (Rat(B[i]) - Rat(A[i])) * scale;
          if (dir == 0) {
            if (lhs != 0) ok = false;
          } else if (!t) {
            t = lhs / dir;
          } else if (*t * dir != lhs) {
            ok = false;
          }
        }
        if (ok && t && *t >= 0 && *t <= 1) hits.push_back(static_cast<int>(r));
      }
      continue;
    }
    // same host: direct comparison
    if (ridge_dim == 0) {
      bool eq = true;
      for (std::size_t i = 0; i < q.coords.size(); ++i)
        if (q.coords[i] != Rat(geom.endpoint_coords[0][i]) * scale) eq = false;
      if (eq) hits.push_back(static_cast<int>(r));
    } else {
      const auto& A = geom.endpoint_coords[0];
      const auto& B = geom.endpoint_coords[1];
      std::optional<Rat> t;
      bool ok = true;
      for (std::size_t i = 0; i < q.coords.size() && ok; ++i) {
        Rat lhs = q.coords[i] - Rat(A[i]) * scale;
        Rat dir = (Rat(B[i]) - Rat(A[i])) * scale;
        if (dir == 0) {
          if (lhs != 0) ok = false;
        } else if (!t) {
          t = lhs / dir;
        } else if (*t * dir != lhs) {
          ok = false;
        }
      }
      if (ok && t && *t >= 0 && *t <= 1) hits.push_back(static_cast<int>(r));
    }
  }
  return hits;
}

inline bool divisor_covers(const RidgeDivisor& e, const std::vector<int>& candidate_ridges) {
  for (int r : candidate_ridges)
    if (e.coeffs[r] > 0) return true;
  return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// h^0 lower bounds
// ---------------------------------------------------------------------------

struct H0Certificate {
  std::vector<RationalPoint> points;
  int order = 1;
  PLFunction witness;            // integer values on the order-m subdivision
  RidgeDivisor representative;   // D + div(witness), effective, covers points
};

struct H0SetOutcome {
  std::vector<RationalPoint> points;
  bool certified = false;
  std::optional<H0Certificate> certificate;
};

struct H0Report {
  RidgeDivisor divisor;
  long long lower_bound = 0;  // 1 + largest size with every tested set certified
  std::vector<H0SetOutcome> outcomes;
};

// Re-verifies a certificate from scratch: the witness has integral slopes,
// D + div(witness) equals the stored representative, it is effective, and
// its support contains every point.
inline bool verify_h0_certificate(const WeakTropicalComplex& w, const RidgeDivisor& d,
                                  const H0Certificate& cert) {
  Subdivision sub = subdivide(w, cert.order);
  RidgeDivisor dm = express_on_subdivision(d, sub.map, sub.complex);
  RidgeDivisor rep = dm + div_pl(sub.complex, cert.witness);
  if (!(rep == cert.representative)) return false;
  if (!rep.is_effective()) return false;
  for (const auto& p : cert.points)
    if (!detail::divisor_covers(rep, detail::ridges_containing_point(w, sub, p))) return false;
  return true;
}

namespace detail {

// Level family: integer combinations of truncated distance functions from
// the divisor's support. Sound but not complete; certificates re-verify.
inline std::optional<H0Certificate> level_family_certificate(
    const WeakTropicalComplex& w, const RidgeDivisor& d,
    const std::vector<RationalPoint>& points, int order, int max_pieces) {
  Subdivision sub = subdivide(w, order);
  RidgeDivisor dm = express_on_subdivision(d, sub.map, sub.complex);
  const DeltaComplex& sdc = sub.complex.complex();
  const int n = sdc.dimension();

  // vertices on the support of D_m
  std::vector<char> on_support(sub.complex.vertex_count(), 0);
  for (std::size_t r = 0; r < dm.coeffs.size(); ++r) {
    if (dm.coeffs[r] == 0) continue;
    for (int v : sdc.simplex(n - 1, static_cast<int>(r)).vertices) on_support[v] = 1;
  }
  // BFS levels in the 1-skeleton
  std::vector<long> dist(sub.complex.vertex_count(), -1);
  std::vector<int> queue;
  for (std::size_t v = 0; v < sub.complex.vertex_count(); ++v)
    if (on_support[v]) {
      dist[v] = 0;
      queue.push_back(static_cast<int>(v));
    }
  if (queue.empty()) return std::nullopt;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (const auto& inc : sdc.cofaces(0, v))
      for (int u : sdc.simplex(1, inc.simplex).vertices)
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
  }
  long levels = *std::max_element(dist.begin(), dist.end());

  std::vector<std::vector<int>> coverage;
  for (const auto& p : points) {
    coverage.push_back(ridges_containing_point(w, sub, p));
    if (coverage.back().empty()) return std::nullopt;
  }

  // enumerate multisets of cut levels
  std::vector<long> cuts;
  std::optional<H0Certificate> found;
  std::function<bool(long, int)> enumerate = [&](long from, int remaining) {
    // evaluate the current multiset
    PLFunction psi(sub.complex.vertex_count(), order);
    for (std::size_t v = 0; v < psi.values.size(); ++v) {
      long acc = 0;
      for (long k : cuts) acc -= std::min(dist[v], k);
      psi.values[v] = rat(acc);
    }
    RidgeDivisor rep = dm + div_pl(sub.complex, psi);
    if (rep.is_effective()) {
      bool covers = true;
      for (const auto& cand : coverage)
        if (!divisor_covers(rep, cand)) covers = false;
      if (covers) {
        H0Certificate cert;
        cert.points = points;
        cert.order = order;
        cert.witness = std::move(psi);
        cert.representative = std::move(rep);
        found = std::move(cert);
        return true;
      }
    }
    if (remaining == 0) return false;
    for (long k = from; k <= levels; ++k) {
      cuts.push_back(k);
      if (enumerate(k, remaining - 1)) return true;
      cuts.pop_back();
    }
    return false;
  };
  enumerate(1, max_pieces);
  return found;
}

}  // namespace detail

// For each point set, searches subdivision orders up to max_order for a
// simplexwise-linear witness making D + div(psi) effective with support
// through every point. The lower bound is 1 + the largest set size at which
// every tested set was certified.
inline H0Report h0_lower_bound(const WeakTropicalComplex& w, const RidgeDivisor& d,
                               const std::vector<std::vector<RationalPoint>>& point_sets,
                               int max_order, int max_pieces = 8) {
  H0Report report;
  report.divisor = d;
  for (const auto& points : point_sets) {
    H0SetOutcome outcome;
    outcome.points = points;
    // the promotion order must accommodate the points' denominators
    Int denom(1);
    for (const auto& p : points) {
      RationalPoint q = normalize_point(w.complex(), p);
      for (const auto& c : q.coords) denom = lcm(denom, c.get_den());
    }
    for (int order = 1; order <= max_order && !outcome.certified; ++order) {
      auto cert = detail::level_family_certificate(w, d, points, order, max_pieces);
      if (cert) {
        if (!verify_h0_certificate(w, d, *cert))
          throw std::logic_error("h0 lower-bound certificate failed re-verification");
        outcome.certified = true;
        outcome.certificate = std::move(cert);
      }
    }
    if (!outcome.certified && points.empty()) {
      // the empty set only needs some effective representative
      auto eff = find_effective_equivalent(w, d, max_order, 4);
      if (eff.found) {
        H0Certificate cert;
        cert.order = eff.order;
        cert.witness = eff.witness;
        cert.representative = eff.representative;
        if (!verify_h0_certificate(w, d, cert))
          throw std::logic_error("h0 lower-bound certificate failed re-verification");
        outcome.certified = true;
        outcome.certificate = std::move(cert);
      }
    }
    report.outcomes.push_back(std::move(outcome));
  }
  // bound: group by size, take the largest size with all sets certified
  std::map<std::size_t, bool> all_ok;
  for (const auto& o : report.outcomes) {
    auto [it, fresh] = all_ok.try_emplace(o.points.size(), true);
    it->second = it->second && o.certified;
  }
  for (const auto& [size, ok] : all_ok)
    if (ok) report.lower_bound = std::max<long long>(report.lower_bound, 1 + size);
  return report;
}

// ---------------------------------------------------------------------------
// Bounded upper-bound exhaustion
// ---------------------------------------------------------------------------

// A bounded certificate, not a proof: exhaustively verifies that no psi with
// |psi| <= value_bound on the order-k subdivision yields an effective
// equivalent divisor through all the points.
struct H0ExhaustionRecord {
  int order = 1;
  long value_bound = 0;
  unsigned long long nodes = 0;
  unsigned long long feasible = 0;  // effective equivalents inspected
  bool found_covering = false;      // true means the upper-bound attempt failed
  std::optional<PLFunction> covering_witness;
};

inline H0ExhaustionRecord h0_upper_bound_bounded(const WeakTropicalComplex& w,
                                                 const RidgeDivisor& d,
                                                 const std::vector<RationalPoint>& points,
                                                 int order, long value_bound) {
  if (!d.is_integral())
    throw std::invalid_argument("bounded exhaustion needs an integral divisor");
  H0ExhaustionRecord record;
  record.order = order;
  record.value_bound = value_bound;
  Subdivision sub = subdivide(w, order);
  RidgeDivisor dm = express_on_subdivision(d, sub.map, sub.complex);
  std::vector<std::vector<int>> coverage;
  for (const auto& p : points) coverage.push_back(detail::ridges_containing_point(w, sub, p));

  std::vector<Int> base;
  for (const auto& c : dm.coeffs) base.push_back(to_int(c));
  PLBoxSearch search(sub.complex, base, value_bound);
  search.enumerate([&](const std::vector<long>& psi) {
    ++record.feasible;
    PLFunction f(sub.complex.vertex_count(), order);
    for (std::size_t i = 0; i < psi.size(); ++i) f.values[i] = Rat(psi[i]);
    RidgeDivisor rep = dm + div_pl(sub.complex, f);
    bool covers = true;
    for (const auto& cand : coverage)
      if (!detail::divisor_covers(rep, cand)) covers = false;
    if (covers) {
      record.found_covering = true;
      record.covering_witness = std::move(f);
      return true;  // stop: the family does contain a covering member
    }
    return false;
  });
  record.nodes = search.nodes();
  return record;
}

// ---------------------------------------------------------------------------
// Disjoint-representative self-pairing
// ---------------------------------------------------------------------------

// Returns degree 0 with a certificate when some D'' ~ D is effective with
// support disjoint from supp(D); otherwise Unknown. Never reports a nonzero
// number: the general intersection pairing is outside this library.
struct SelfPairingResult {
  bool known_zero = false;
  int order = 1;
  std::optional<PLFunction> witness;
  std::optional<RidgeDivisor> representative;
};

inline SelfPairingResult self_pairing_disjoint(const WeakTropicalComplex& w,
                                               const RidgeDivisor& d, int max_order,
                                               long value_bound = 4) {
  if (!d.is_effective()) throw std::invalid_argument("self_pairing_disjoint needs effective input");
  SelfPairingResult out;
  if (d.is_zero()) {
    out.known_zero = true;
    out.order = 1;
    return out;
  }
  for (int m = 1; m <= max_order; ++m) {
    Subdivision sub = subdivide(w, m);
    RidgeDivisor dm = express_on_subdivision(d, sub.map, sub.complex);
    std::vector<Int> base;
    for (const auto& c : dm.coeffs) base.push_back(to_int(c));
    PLBoxSearch search(sub.complex, base, value_bound);
    for (std::size_t r = 0; r < dm.coeffs.size(); ++r)
      if (dm.coeffs[r] != 0) search.force_zero_at(static_cast<int>(r), base[r]);
    std::vector<long> found;
    if (search.enumerate([&](const std::vector<long>& psi) {
          found = psi;
          return true;
        })) {
      out.known_zero = true;
      out.order = m;
      PLFunction f(sub.complex.vertex_count(), m);
      for (std::size_t i = 0; i < found.size(); ++i) f.values[i] = Rat(found[i]);
      RidgeDivisor rep = dm + div_pl(sub.complex, f);
      if (!rep.is_effective()) throw std::logic_error("disjoint representative not effective");
      for (std::size_t r = 0; r < dm.coeffs.size(); ++r)
        if (dm.coeffs[r] != 0 && rep.coeffs[r] != 0)
          throw std::logic_error("disjoint representative meets the support");
      out.witness = std::move(f);
      out.representative = std::move(rep);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Riemann-Roch inequality checker
// ---------------------------------------------------------------------------

struct RRCheck {
  RidgeDivisor divisor;
  Rat h0_d, h0_kd;        // supplied h^0 values
  Rat pairing_degree;     // supplied deg D.(D - K)
  long euler = 0;
  Rat lhs, rhs;
  bool holds = false;
  bool d_cartier = false;        // sampled Cartier status of D
  bool canonical_cartier = false;  // sampled Cartier status of K
  bool hypothesis_ok = false;
};

namespace detail {

// Samples the Cartier condition at every vertex and at every ridge midpoint.
inline bool sampled_cartier(const WeakTropicalComplex& w, const RidgeDivisor& d) {
  const DeltaComplex& dc = w.complex();
  const int n = dc.dimension();
  for (std::size_t v = 0; v < dc.count(0); ++v) {
    RationalPoint p{SimplexId{0, static_cast<int>(v)}, {rat(1)}};
    if (!is_cartier_at(w, d, p, CartierMode::Integral).cartier) return false;
  }
  for (std::size_t r = 0; r < dc.count(n - 1); ++r) {
    RationalPoint p{SimplexId{n - 1, static_cast<int>(r)},
                    std::vector<Rat>(static_cast<std::size_t>(n), rat(1, n))};
    if (!is_cartier_at(w, d, p, CartierMode::Integral).cartier) return false;
  }
  return true;
}

}  // namespace detail

// lhs = h0(D) + h0(K - D); rhs = pairing/2 + Euler characteristic. Both kept
// exact; an odd pairing degree simply leaves a rational rhs.
inline RRCheck rr_check(const WeakTropicalComplex& w, const RidgeDivisor& d, const Rat& h0_d,
                        const Rat& h0_kd, const Rat& pairing_degree) {
  RRCheck out;
  out.divisor = d;
  out.h0_d = h0_d;
  out.h0_kd = h0_kd;
  out.pairing_degree = pairing_degree;
  out.euler = w.euler_characteristic();
  out.lhs = h0_d + h0_kd;
  out.rhs = pairing_degree / 2 + Rat(out.euler);
  out.holds = out.lhs >= out.rhs;
  out.d_cartier = detail::sampled_cartier(w, d);
  RidgeDivisor k(w.ridge_count());
  k.coeffs = w.canonical_divisor_coeffs();
  out.canonical_cartier = detail::sampled_cartier(w, k);
  out.hypothesis_ok = out.d_cartier && out.canonical_cartier;
  return out;
}

}  // namespace tropx

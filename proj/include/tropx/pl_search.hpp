#pragma once

// Bounded exhaustive search over simplexwise-linear integer functions:
// enumerate psi with |psi(v)| <= B such that T + div(psi) satisfies per-ridge
// bounds, via depth-first search with interval propagation. Used for
// effective-representative searches, bounded h^0 exhaustions, and
// disjoint-support certificates. The family is finite and the search is
// complete over it; callers must treat negatives as bounded statements.

#include <array>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tropx/divisor.hpp"

namespace tropx {

struct PLBoxFamily {
  int order = 1;        // subdivision order the host complex lives at
  long value_bound = 4; // |psi(v)| <= value_bound
};

class PLBoxSearch {
 public:
  // base: integer coefficients of the divisor T on the host's ridges.
  // Effectiveness bounds are set up as  sum_r_stencil >= -T_r  by default.
  PLBoxSearch(const WeakTropicalComplex& host, const std::vector<Int>& base, long value_bound)
      : host_(&host), bound_(value_bound) {
    const std::size_t ridges = host.ridge_count();
    const std::size_t verts = host.vertex_count();
    if (base.size() != ridges) throw std::invalid_argument("PLBoxSearch: base size mismatch");
    IntMatrix dm = div_matrix(host);
    stencils_.resize(ridges);
    lo_.resize(ridges);
    hi_.assign(ridges, std::numeric_limits<long long>::max());
    for (std::size_t r = 0; r < ridges; ++r) {
      for (std::size_t v = 0; v < verts; ++v)
        if (dm(r, v) != 0) stencils_[r].push_back({static_cast<int>(v), dm(r, v).get_si()});
      lo_[r] = -base[r].get_si();
    }
    order_variables();
  }

  // Require the result coefficient at ridge r to be exactly zero.
  void force_zero_at(int ridge, const Int& base_coeff) {
    lo_[ridge] = -base_coeff.get_si();
    hi_[ridge] = -base_coeff.get_si();
  }

  // Require the result coefficient at ridge r to be >= 1 (point coverage on
  // a single candidate ridge).
  void require_positive_at(int ridge, const Int& base_coeff) {
    lo_[ridge] = std::max(lo_[ridge], static_cast<long long>(1 - base_coeff.get_si()));
  }

  // Visits every psi in the box satisfying all ridge bounds. The callback
  // returns true to stop early. Returns true if stopped early.
  bool enumerate(const std::function<bool(const std::vector<long>&)>& visit) {
    const std::size_t verts = host_->vertex_count();
    values_.assign(verts, 0);
    assigned_.assign(verts, false);
    partial_.assign(lo_.size(), 0);
    slack_min_.assign(lo_.size(), 0);
    slack_max_.assign(lo_.size(), 0);
    for (std::size_t r = 0; r < lo_.size(); ++r)
      for (const auto& [v, c] : stencils_[r]) {
        slack_min_[r] -= std::abs(c) * bound_;
        slack_max_[r] += std::abs(c) * bound_;
      }
    nodes_ = 0;
    return dfs(0, visit);
  }

  unsigned long long nodes() const { return nodes_; }

 private:
  struct Entry {
    int vertex;
    long long coeff;
  };

  void order_variables() {
    // breadth-first from vertices that appear in tight constraints keeps
    // propagation effective; fall back to index order
    const std::size_t verts = host_->vertex_count();
    order_.clear();
    std::vector<char> seen(verts, 0);
    for (std::size_t r = 0; r < lo_.size(); ++r) {
      if (hi_[r] != std::numeric_limits<long long>::max() || lo_[r] > 0) {
        for (const auto& [v, c] : stencils_[r])
          if (!seen[v]) {
            seen[v] = 1;
            order_.push_back(v);
          }
      }
    }
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      // expand through shared ridges
      for (std::size_t r = 0; r < lo_.size(); ++r) {
        bool touches = false;
        for (const auto& [v, c] : stencils_[r])
          if (v == order_[pos]) touches = true;
        if (!touches) continue;
        for (const auto& [v, c] : stencils_[r])
          if (!seen[v]) {
            seen[v] = 1;
            order_.push_back(v);
          }
      }
    }
    for (std::size_t v = 0; v < verts; ++v)
      if (!seen[v]) order_.push_back(static_cast<int>(v));
  }

  bool dfs(std::size_t depth, const std::function<bool(const std::vector<long>&)>& visit) {
    ++nodes_;
    if (depth == order_.size()) return visit(values_);
    int var = order_[depth];
    for (long val = -bound_; val <= bound_; ++val) {
      values_[var] = val;
      assigned_[var] = true;
      bool ok = true;
      for (std::size_t r = 0; r < lo_.size() && ok; ++r) {
        // incremental would be faster; stencil sizes are tiny, so recompute
        long long sum = 0, add_min = 0, add_max = 0;
        bool uses = false;
        for (const auto& [v, c] : stencils_[r]) {
          if (v == var) uses = true;
          if (assigned_[v]) {
            sum += c * values_[v];
          } else {
            add_min -= std::abs(c) * bound_;
            add_max += std::abs(c) * bound_;
          }
        }
        if (!uses) continue;
        if (sum + add_max < lo_[r]) ok = false;
        if (sum + add_min > hi_[r]) ok = false;
      }
      if (ok && dfs(depth + 1, visit)) return true;
      assigned_[var] = false;
    }
    return false;
  }

  const WeakTropicalComplex* host_;
  long bound_;
  std::vector<std::vector<Entry>> stencils_;
  std::vector<long long> lo_, hi_, partial_, slack_min_, slack_max_;
  std::vector<int> order_;
  std::vector<long> values_;
  std::vector<char> assigned_;
  unsigned long long nodes_ = 0;
};

// Searches |psi| <= B on the order-m subdivision for T_m + div(psi) >= 0.
// Returns the effective representative and the witness when found.
struct EffectiveSearchResult {
  bool found = false;
  int order = 1;
  PLFunction witness;
  RidgeDivisor representative;
};

inline EffectiveSearchResult find_effective_equivalent(const WeakTropicalComplex& w,
                                                       const RidgeDivisor& d, int max_order,
                                                       long value_bound) {
  EffectiveSearchResult out;
  if (d.order != 1) throw std::invalid_argument("find_effective_equivalent expects a base divisor");
  if (!d.is_integral()) return out;
  for (int m = 1; m <= max_order; ++m) {
    Subdivision sub = subdivide(w, m);
    RidgeDivisor dm = express_on_subdivision(d, sub.map, sub.complex);
    std::vector<Int> base;
    for (const auto& c : dm.coeffs) base.push_back(to_int(c));
    PLBoxSearch search(sub.complex, base, value_bound);
    std::vector<long> found;
    if (search.enumerate([&](const std::vector<long>& psi) {
          found = psi;
          return true;
        })) {
      out.found = true;
      out.order = m;
      out.witness = PLFunction(sub.complex.vertex_count(), m);
      for (std::size_t i = 0; i < found.size(); ++i) out.witness.values[i] = Rat(found[i]);
      out.representative = dm + div_pl(sub.complex, out.witness);
      if (!out.representative.is_effective())
        throw std::logic_error("effective search produced a non-effective representative");
      return out;
    }
  }
  return out;
}

}  // namespace tropx

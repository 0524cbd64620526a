#pragma once

// Value types shared by the divisor theory and the subdivision machinery.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropx/delta_complex.hpp"
#include "tropx/rational.hpp"

namespace tropx {

// Formal sum over the ridges of a (possibly subdivided) complex. Dense over
// ridge indices of its host; `order` records which subdivision the indices
// refer to (1 = the base complex).
struct RidgeDivisor {
  int order = 1;
  std::vector<Rat> coeffs;

  RidgeDivisor() = default;
  explicit RidgeDivisor(std::size_t ridges, int ord = 1)
      : order(ord), coeffs(ridges, Rat(0)) {}

  Rat degree() const {
    Rat d(0);
    for (const auto& c : coeffs) d += c;
    return d;
  }
  bool is_effective() const {
    for (const auto& c : coeffs)
      if (c < 0) return false;
    return true;
  }
  bool is_integral() const {
    for (const auto& c : coeffs)
      if (!is_integer(c)) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& c : coeffs)
      if (c != 0) return false;
    return true;
  }
  std::vector<int> support() const {
    std::vector<int> s;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) s.push_back(static_cast<int>(i));
    return s;
  }

  RidgeDivisor& operator+=(const RidgeDivisor& o) {
    if (order != o.order || coeffs.size() != o.coeffs.size())
      throw std::invalid_argument("divisor arithmetic on mismatched hosts");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  RidgeDivisor operator+(const RidgeDivisor& o) const {
    RidgeDivisor r = *this;
    r += o;
    return r;
  }
  RidgeDivisor operator-(const RidgeDivisor& o) const {
    RidgeDivisor r = *this;
    if (order != o.order || coeffs.size() != o.coeffs.size())
      throw std::invalid_argument("divisor arithmetic on mismatched hosts");
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= o.coeffs[i];
    return r;
  }
  RidgeDivisor operator*(const Rat& c) const {
    RidgeDivisor r = *this;
    for (auto& v : r.coeffs) v *= c;
    return r;
  }
  bool operator==(const RidgeDivisor& o) const {
    return order == o.order && coeffs == o.coeffs;
  }
};

// Rational vertex values interpreted simplexwise-linearly on the host
// (base complex when order = 1, else the order-m subdivision).
struct PLFunction {
  int order = 1;
  std::vector<Rat> values;

  PLFunction() = default;
  explicit PLFunction(std::size_t vertices, int ord = 1)
      : order(ord), values(vertices, Rat(0)) {}

  bool operator==(const PLFunction& o) const {
    return order == o.order && values == o.values;
  }
};

// Rational point of the complex: barycentric coordinates (summing to 1,
// non-negative) within a host simplex.
struct RationalPoint {
  SimplexId host;
  std::vector<Rat> coords;
};

struct PointOutsideComplex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Drops zero coordinates, moving the point to its minimal host simplex.
inline RationalPoint normalize_point(const DeltaComplex& dc, const RationalPoint& p) {
  if (!p.host.valid() || p.host.dim > dc.dimension() ||
      p.host.index >= static_cast<int>(dc.count(p.host.dim)))
    throw PointOutsideComplex("point host simplex does not exist");
  if (p.coords.size() != static_cast<std::size_t>(p.host.dim + 1))
    throw PointOutsideComplex("point needs dim+1 barycentric coordinates");
  Rat sum(0);
  for (const auto& c : p.coords) {
    if (c < 0) throw PointOutsideComplex("negative barycentric coordinate");
    sum += c;
  }
  if (sum != 1) throw PointOutsideComplex("barycentric coordinates must sum to 1");
  std::vector<int> keep;
  for (int i = 0; i <= p.host.dim; ++i)
    if (p.coords[i] != 0) keep.push_back(i);
  if (static_cast<int>(keep.size()) == p.host.dim + 1) return p;
  RationalPoint q;
  q.host = dc.face_by_positions(p.host, keep);
  for (int i : keep) q.coords.push_back(p.coords[i]);
  return q;
}

}  // namespace tropx

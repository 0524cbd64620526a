#pragma once

// Exact rational and integer linear algebra: rational solving with
// inconsistency certificates, Smith normal form with unimodular transforms,
// cokernel presentations, lattice saturation, integer system solving, and
// exact symmetric-matrix inertia (characteristic polynomial + Descartes).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tropx/matrix.hpp"
#include "tropx/rational.hpp"

namespace tropx {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotSymmetric : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Rational elimination
// ---------------------------------------------------------------------------

// Result of solving A x = b over the rationals. Exactly one of `solution`
// and `certificate` is set: the certificate is a left kernel vector y with
// y A = 0 and y b != 0, witnessing inconsistency.
struct RationalSolveResult {
  std::optional<std::vector<Rat>> solution;
  std::optional<std::vector<Rat>> certificate;
  bool consistent() const { return solution.has_value(); }
};

inline RationalSolveResult solve_rational(const RatMatrix& a, const std::vector<Rat>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_rational: rhs length != row count");
  const std::size_t m = a.rows(), n = a.cols();
  RatMatrix work = a;
  std::vector<Rat> rhs = b;
  // row_ops tracks E with E * a == work, so inconsistent rows yield certificates.
  RatMatrix row_ops = RatMatrix::identity(m);

  std::vector<std::size_t> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && work(piv, col) == Rat(0)) ++piv;
    if (piv == m) continue;
    work.swap_rows(row, piv);
    row_ops.swap_rows(row, piv);
    std::swap(rhs[row], rhs[piv]);
    Rat inv = Rat(1) / work(row, col);
    work.scale_row(row, inv);
    row_ops.scale_row(row, inv);
    rhs[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || work(i, col) == Rat(0)) continue;
      Rat f = -work(i, col);
      work.add_row(i, row, f);
      row_ops.add_row(i, row, f);
      rhs[i] += f * rhs[row];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i) {
    if (rhs[i] != Rat(0)) {
      std::vector<Rat> cert(m);
      for (std::size_t j = 0; j < m; ++j) cert[j] = row_ops(i, j);
      RationalSolveResult res;
      res.certificate = std::move(cert);
      return res;
    }
  }
  std::vector<Rat> x(n, Rat(0));
  for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i) x[pivot_col_of_row[i]] = rhs[i];
  RationalSolveResult res;
  res.solution = std::move(x);
  return res;
}

// Basis of the right kernel {x : A x = 0} over the rationals.
inline std::vector<std::vector<Rat>> rational_kernel(const RatMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  RatMatrix work = a;
  std::vector<int> pivot_of_col(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && work(piv, col) == Rat(0)) ++piv;
    if (piv == m) continue;
    work.swap_rows(row, piv);
    work.scale_row(row, Rat(1) / work(row, col));
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || work(i, col) == Rat(0)) continue;
      work.add_row(i, row, -work(i, col));
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  std::vector<std::vector<Rat>> basis;
  for (std::size_t col = 0; col < n; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<Rat> v(n, Rat(0));
    v[col] = Rat(1);
    for (std::size_t c = 0; c < n; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -work(static_cast<std::size_t>(pivot_of_col[c]), col);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of the left kernel {y : y A = 0}.
inline std::vector<std::vector<Rat>> rational_left_kernel(const RatMatrix& a) {
  return rational_kernel(a.transposed());
}

inline std::optional<RatMatrix> rational_inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("rational_inverse: matrix not square");
  const std::size_t n = a.rows();
  RatMatrix work = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work(piv, col) == Rat(0)) ++piv;
    if (piv == n) return std::nullopt;
    work.swap_rows(col, piv);
    inv.swap_rows(col, piv);
    Rat f = Rat(1) / work(col, col);
    work.scale_row(col, f);
    inv.scale_row(col, f);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || work(i, col) == Rat(0)) continue;
      Rat g = -work(i, col);
      work.add_row(i, col, g);
      inv.add_row(i, col, g);
    }
  }
  return inv;
}

// Fraction-free determinant (Bareiss). Used by oracles and unimodularity checks.
inline Int det_integer(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("det_integer: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return Int(1);
  IntMatrix w = a;
  Int prev(1);
  int sgn = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && w(piv, k) == 0) ++piv;
      if (piv == n) return Int(0);
      w.swap_rows(k, piv);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w(i, j) = exact_div(w(k, k) * w(i, j) - w(i, k) * w(k, j), prev);
    prev = w(k, k);
  }
  return sgn > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Characteristic polynomial and inertia
// ---------------------------------------------------------------------------

// Coefficients of det(x I - A), lowest degree first, via Faddeev-LeVerrier.
// All divisions are exact over the integers.
inline std::vector<Int> characteristic_polynomial(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("characteristic_polynomial: not square");
  const std::size_t n = a.rows();
  std::vector<Int> coeff(n + 1, Int(0));
  coeff[n] = Int(1);
  IntMatrix m(n, n);  // running matrix M_k
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A * (M_{k-1} + c_{n-k+1} I)
    IntMatrix t = m;
    for (std::size_t i = 0; i < n; ++i) t(i, i) += coeff[n - k + 1];
    m = a * t;
    Int trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
    coeff[n - k] = exact_div(-trace, Int(static_cast<long>(k)));
  }
  return coeff;
}

struct InertiaTriple {
  std::size_t n_plus = 0, n_zero = 0, n_minus = 0;
  bool operator==(const InertiaTriple&) const = default;
};

// Exact signature of a symmetric integer matrix. The spectrum is real, so
// after stripping the x^k factor, Descartes' rule counts positive roots
// exactly; negative roots follow by substituting -x.
inline InertiaTriple inertia(const IntMatrix& a) {
  if (!a.is_symmetric()) throw NotSymmetric("inertia: matrix is not symmetric");
  const std::size_t n = a.rows();
  std::vector<Int> p = characteristic_polynomial(a);
  std::size_t z = 0;
  while (z <= n && p[z] == 0) ++z;
  InertiaTriple res;
  res.n_zero = z;
  int prev = 0;
  std::size_t variations = 0;
  for (std::size_t i = z; i <= n; ++i) {
    int s = sign(p[i]);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  res.n_plus = variations;
  res.n_minus = n - z - variations;
  return res;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithDecomposition {
  IntMatrix u, s, v;  // u * a * v == s
  std::size_t rank = 0;
  std::vector<Int> diagonal;  // nonzero invariant factors d1 | d2 | ...
};

namespace detail {

inline bool snf_find_pivot(const IntMatrix& s, std::size_t k, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = k; i < s.rows(); ++i)
    for (std::size_t j = k; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      Int v = abs(s(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace detail

// Smallest-pivot elimination; adequate at desk scale. Verifies u*a*v == s
// before returning.
inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithDecomposition out;
  out.s = a;
  out.u = IntMatrix::identity(m);
  out.v = IntMatrix::identity(n);
  IntMatrix& s = out.s;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;

  std::size_t k = 0;
  while (k < m && k < n) {
    std::size_t pi = k, pj = k;
    if (!detail::snf_find_pivot(s, k, pi, pj)) break;
    s.swap_rows(k, pi);
    u.swap_rows(k, pi);
    s.swap_cols(k, pj);
    v.swap_cols(k, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (s(i, k) == 0) continue;
        Int q = -floor_div(s(i, k), s(k, k));
        if (q != 0) {
          s.add_row(i, k, q);
          u.add_row(i, k, q);
        }
        if (s(i, k) != 0) {  // remainder smaller than pivot: swap up and restart
          s.swap_rows(k, i);
          u.swap_rows(k, i);
          clean = false;
        }
      }
      if (!clean) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (s(k, j) == 0) continue;
        Int q = -floor_div(s(k, j), s(k, k));
        if (q != 0) {
          s.add_col(j, k, q);
          v.add_col(j, k, q);
        }
        if (s(k, j) != 0) {
          s.swap_cols(k, j);
          v.swap_cols(k, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block; if not, mix the offending row in
      for (std::size_t i = k + 1; i < m && clean; ++i)
        for (std::size_t j = k + 1; j < n && clean; ++j)
          if (s(i, j) % s(k, k) != 0) {
            s.add_row(k, i, Int(1));
            u.add_row(k, i, Int(1));
            clean = false;
          }
    }
    if (s(k, k) < 0) {
      s.scale_row(k, Int(-1));
      u.scale_row(k, Int(-1));
    }
    ++k;
  }

  // Enforce the divisibility chain on the diagonal.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (s(i + 1, i + 1) % s(i, i) == 0) continue;
      changed = true;
      // diag(a,b) with a ∤ b  ->  diag(gcd, lcm)
      s.add_row(i, i + 1, Int(1));
      u.add_row(i, i + 1, Int(1));
      Int x, y;
      Int aa = s(i, i), bb = s(i, i + 1);
      Int g = gcd_ext(aa, bb, x, y);
      Int ag = exact_div(aa, g), bg = exact_div(bb, g);
      // columns (ci, cj) -> (x ci + y cj, -bg ci + ag cj), determinant 1
      for (std::size_t r = 0; r < m; ++r) {
        Int ci = s(r, i), cj = s(r, i + 1);
        s(r, i) = x * ci + y * cj;
        s(r, i + 1) = ag * cj - bg * ci;
      }
      for (std::size_t r = 0; r < n; ++r) {
        Int ci = v(r, i), cj = v(r, i + 1);
        v(r, i) = x * ci + y * cj;
        v(r, i + 1) = ag * cj - bg * ci;
      }
      // clear the remaining below-diagonal entry in column i
      Int q = -exact_div(s(i + 1, i), s(i, i));
      s.add_row(i + 1, i, q);
      u.add_row(i + 1, i, q);
      if (s(i + 1, i + 1) < 0) {
        s.scale_row(i + 1, Int(-1));
        u.scale_row(i + 1, Int(-1));
      }
    }
  }

  out.rank = k;
  for (std::size_t i = 0; i < k; ++i) out.diagonal.push_back(s(i, i));
  if (!(u * a * v == s)) throw std::logic_error("smith_normal_form: U*A*V != S");
  return out;
}

struct AbelianGroupPresentation {
  std::size_t free_rank = 0;
  std::vector<Int> invariant_factors;  // each > 1, divisibility chain
  bool operator==(const AbelianGroupPresentation&) const = default;

  bool is_free_of_rank(std::size_t r) const {
    return free_rank == r && invariant_factors.empty();
  }
};

// Presentation of Z^rows / column-span(A).
inline AbelianGroupPresentation cokernel(const IntMatrix& a) {
  AbelianGroupPresentation pres;
  if (a.cols() == 0 || a.rows() == 0) {
    pres.free_rank = a.rows();
    return pres;
  }
  SmithDecomposition snf = smith_normal_form(a);
  pres.free_rank = a.rows() - snf.rank;
  for (const Int& d : snf.diagonal)
    if (d > 1) pres.invariant_factors.push_back(d);
  return pres;
}

// Rows of the result span {x in Z^n : k x in rowspan(L) for some k > 0}.
inline IntMatrix saturate(const IntMatrix& l) {
  const std::size_t n = l.cols();
  if (l.rows() == 0) return IntMatrix(0, n);
  SmithDecomposition snf = smith_normal_form(l);
  // rowspan(L) = span_Z { d_i * (row i of V^{-1}) }; saturation drops the d_i.
  auto vinv_rat = rational_inverse(to_rational(snf.v));
  if (!vinv_rat) throw std::logic_error("saturate: V not invertible");
  IntMatrix basis(snf.rank, n);
  for (std::size_t i = 0; i < snf.rank; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = to_int((*vinv_rat)(i, j));
  return basis;
}

// One solution of A x = b over the integers, if any.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve_integer: rhs length != row count");
  SmithDecomposition snf = smith_normal_form(a);
  std::vector<Int> ub(a.rows(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) ub[i] += snf.u(i, j) * b[j];
  std::vector<Int> y(a.cols(), Int(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      Int q, r;
      mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ub[i].get_mpz_t(), snf.diagonal[i].get_mpz_t());
      if (r != 0) return std::nullopt;
      y[i] = q;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(a.cols(), Int(0));
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) x[i] += snf.v(i, j) * y[j];
  return x;
}

// Reusable solver for many right-hand sides against one matrix.
class IntegerLinearSolver {
 public:
  explicit IntegerLinearSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()), snf_(smith_normal_form(a)) {}

  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const {
    if (b.size() != rows_) throw DimensionMismatch("IntegerLinearSolver: rhs length");
    std::vector<Int> ub(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < rows_; ++j) ub[i] += snf_.u(i, j) * b[j];
    std::vector<Int> y(cols_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i < snf_.rank) {
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), ub[i].get_mpz_t(), snf_.diagonal[i].get_mpz_t());
        if (r != 0) return std::nullopt;
        y[i] = q;
      } else if (ub[i] != 0) {
        return std::nullopt;
      }
    }
    std::vector<Int> x(cols_, Int(0));
    for (std::size_t i = 0; i < cols_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) x[i] += snf_.v(i, j) * y[j];
    return x;
  }

 private:
  std::size_t rows_, cols_;
  SmithDecomposition snf_;
};

// Basis (as rows) of {x in Z^n : A x = 0}; saturated by construction.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  SmithDecomposition snf = smith_normal_form(a);
  const std::size_t n = a.cols();
  IntMatrix basis(n - snf.rank, n);
  for (std::size_t k = snf.rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(k - snf.rank, i) = snf.v(i, k);
  return basis;
}

}  // namespace tropx

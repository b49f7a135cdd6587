#pragma once

#include "kgsf/error.hpp"
#include "kgsf/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace kgsf {

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

/// Column Hermite normal form H = M * U.
///
/// Convention: lower-triangular column echelon form, strictly increasing
/// pivot rows, positive pivots, and every entry to the left of a pivot lies
/// in [0, pivot). Zero columns are trimmed from H, so H has rank() columns
/// while U stays square and unimodular; the trailing cols - rank() columns
/// of U span the kernel of M.
template <typename Scalar>
struct HermiteForm {
  Mat<Scalar> H;
  Mat<Scalar> U;
  std::vector<Eigen::Index> pivot_rows;

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_rows.size()); }
};

template <typename Derived>
HermiteForm<typename Derived::Scalar> hnf(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Mat<Scalar> h = m;
  Mat<Scalar> u = Mat<Scalar>::Identity(cols, cols);
  std::vector<Eigen::Index> pivots;

  // new_p = x*p + y*k, new_k = (-b/g)*p + (a/g)*k has determinant one.
  auto combine = [](Mat<Scalar>& a, Eigen::Index p, Eigen::Index k, const Scalar& x,
                    const Scalar& y, const Scalar& bg, const Scalar& ag) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      Scalar cp = a(r, p);
      Scalar ck = a(r, k);
      a(r, p) = x * cp + y * ck;
      a(r, k) = ag * ck - bg * cp;
    }
  };

  Eigen::Index pc = 0;
  for (Eigen::Index i = 0; i < rows && pc < cols; ++i) {
    for (Eigen::Index k = pc + 1; k < cols; ++k) {
      if (h(i, k) == 0) continue;
      Scalar a = h(i, pc);
      Scalar b = h(i, k);
      auto [g, x, y] = ext_gcd(a, b);
      Scalar bg = b / g;
      Scalar ag = a / g;
      combine(h, pc, k, x, y, bg, ag);
      combine(u, pc, k, x, y, bg, ag);
    }
    if (h(i, pc) == 0) continue;
    if (h(i, pc) < 0) {
      h.col(pc) = -h.col(pc);
      u.col(pc) = -u.col(pc);
    }
    const Scalar pivot = h(i, pc);
    for (Eigen::Index k = 0; k < pc; ++k) {
      Scalar q = floor_div(Scalar(h(i, k)), pivot);
      if (q == 0) continue;
      h.col(k) -= q * h.col(pc);
      u.col(k) -= q * u.col(pc);
    }
    pivots.push_back(i);
    ++pc;
  }
  return {h.leftCols(pc), std::move(u), std::move(pivots)};
}

/// Smith normal form U * M * V = D with d_1 | d_2 | ... on the diagonal.
///
/// Pivoting picks the nonzero entry of smallest absolute value in the active
/// block, ties broken by row then column index. U_inv is maintained alongside
/// U so that cokernel generators can be lifted without a separate inversion.
template <typename Scalar>
struct SmithForm {
  Mat<Scalar> U;
  Mat<Scalar> D;
  Mat<Scalar> V;
  Mat<Scalar> U_inv;
  Eigen::Index rank = 0;

  std::vector<Scalar> invariant_factors() const {
    std::vector<Scalar> out;
    for (Eigen::Index i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

template <typename Derived>
SmithForm<typename Derived::Scalar> snf(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  SmithForm<Scalar> out;
  Mat<Scalar>& d = out.D;
  Mat<Scalar>& u = out.U;
  Mat<Scalar>& v = out.V;
  Mat<Scalar>& ui = out.U_inv;
  d = m;
  u = Mat<Scalar>::Identity(rows, rows);
  ui = Mat<Scalar>::Identity(rows, rows);
  v = Mat<Scalar>::Identity(cols, cols);

  // Row operation row_i += q * row_j, mirrored on U and (inversely) on U_inv.
  auto add_row = [&](Eigen::Index i, Eigen::Index j, const Scalar& q) {
    d.row(i) += q * d.row(j);
    u.row(i) += q * u.row(j);
    ui.col(j) -= q * ui.col(i);
  };
  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    d.row(i).swap(d.row(j));
    u.row(i).swap(u.row(j));
    ui.col(i).swap(ui.col(j));
  };

  const Eigen::Index n = std::min(rows, cols);
  Eigen::Index t = 0;
  for (; t < n; ++t) {
    bool found_pivot = false;
    while (true) {
      Eigen::Index pi = -1, pj = -1;
      Scalar best = 0;
      for (Eigen::Index i = t; i < rows; ++i) {
        for (Eigen::Index j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          Scalar a = abs_value(Scalar(d(i, j)));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      }
      if (pi < 0) break;
      found_pivot = true;
      swap_rows(t, pi);
      if (pj != t) {
        d.col(t).swap(d.col(pj));
        v.col(t).swap(v.col(pj));
      }
      bool clean = true;
      const Scalar pivot = d(t, t);
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Scalar q = d(i, t) / pivot;
        if (q != 0) add_row(i, t, Scalar(-q));
        if (d(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Scalar q = d(t, j) / pivot;
        if (q != 0) {
          d.col(j) -= q * d.col(t);
          v.col(j) -= q * v.col(t);
        }
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      bool divisible = true;
      for (Eigen::Index i = t + 1; i < rows && divisible; ++i) {
        for (Eigen::Index j = t + 1; j < cols; ++j) {
          if (d(i, j) % pivot != 0) {
            add_row(t, i, Scalar(1));
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (!found_pivot) break;
    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      u.row(t) = -u.row(t);
      ui.col(t) = -ui.col(t);
    }
  }
  out.rank = t;
  return out;
}

/// Basis of {x : M x = 0}, returned as columns in Hermite normal form.
template <typename Derived>
Mat<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  auto form = hnf(m);
  const Eigen::Index nullity = m.cols() - form.rank();
  if (nullity == 0) return Mat<typename Derived::Scalar>(m.cols(), 0);
  Mat<typename Derived::Scalar> k = form.U.rightCols(nullity);
  return hnf(k).H;
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

struct Membership {
  bool member = false;
  /// Coefficients on the lattice basis; meaningful only when member.
  IntVector coefficients;
};

/// A sublattice of Z^d, stored by its canonical Hermite basis.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(Eigen::Index ambient_dim);

  /// Lattice spanned by the columns of generators.
  static Lattice span(const IntMatrix& generators);
  static Lattice full(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return dim_; }
  Eigen::Index rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }

  Membership contains(const IntVector& x) const;
  bool contains_all(const IntMatrix& columns) const;
  bool is_subset_of(const Lattice& other) const;

  friend bool operator==(const Lattice& a, const Lattice& b);

 private:
  Eigen::Index dim_ = 0;
  IntMatrix basis_;
  std::vector<Eigen::Index> pivot_rows_;
};

Membership lattice_membership(const Lattice& lattice, const IntVector& x);

/// {x : phi x in L}. phi maps Z^cols into the ambient space of L.
Lattice preimage_lattice(const IntMatrix& phi, const Lattice& lattice);

// ---------------------------------------------------------------------------
// Finitely generated abelian groups
// ---------------------------------------------------------------------------

/// Z^d / L presented as Z^free_rank (+) Z/t_1 (+) ... (+) Z/t_k, t_1 | ... | t_k.
///
/// Coordinates list the free part first, then the torsion part with each
/// torsion coordinate reduced into [0, t_j).
class FgAbGroup {
 public:
  FgAbGroup() = default;

  /// Cokernel of M: Z^rows / column span of M.
  static FgAbGroup cokernel(const IntMatrix& m);

  Eigen::Index ambient_dim() const { return relations_.ambient_dim(); }
  Eigen::Index free_rank() const { return free_rank_; }
  const std::vector<BigInt>& torsion() const { return torsion_; }
  Eigen::Index num_generators() const { return free_rank_ + static_cast<Eigen::Index>(torsion_.size()); }
  bool is_trivial() const { return num_generators() == 0; }
  bool is_free() const { return torsion_.empty(); }
  /// Order of the torsion subgroup.
  BigInt torsion_order() const;

  /// Class of an ambient vector.
  IntVector to_coords(const IntVector& x) const;
  /// Reduce a coordinate vector into canonical form.
  IntVector normalize(const IntVector& coords) const;
  /// Ambient representative of the j-th generator.
  IntVector lift(Eigen::Index j) const { return lift_.col(j); }
  const Lattice& relations() const { return relations_; }

  /// e.g. "Z^2 + Z/2 + Z/6", or "0".
  std::string describe() const;

 private:
  Eigen::Index free_rank_ = 0;
  std::vector<BigInt> torsion_;
  IntMatrix projection_;  // num_generators x ambient_dim
  IntMatrix lift_;        // ambient_dim x num_generators
  Lattice relations_;
};

FgAbGroup coker_presentation(const IntMatrix& m);

/// A homomorphism between presented groups, as a matrix on generators.
class GroupHom {
 public:
  GroupHom(FgAbGroup src, FgAbGroup dst, IntMatrix matrix);

  const FgAbGroup& source() const { return src_; }
  const FgAbGroup& target() const { return dst_; }
  /// dst.num_generators() x src.num_generators(), entries normalized.
  const IntMatrix& matrix() const { return matrix_; }

  IntVector apply(const IntVector& coords) const;
  bool is_identity() const;
  bool is_zero() const;

 private:
  FgAbGroup src_;
  FgAbGroup dst_;
  IntMatrix matrix_;
};

/// The map induced on cokernels by an ambient map f: Z^a -> Z^b.
/// Throws NotWellDefined unless f maps src's relations into dst's.
GroupHom induced_map(const IntMatrix& f, const FgAbGroup& src, const FgAbGroup& dst);

GroupHom compose(const GroupHom& second, const GroupHom& first);

/// L_outer / L_inner presented in coordinates of L_outer's basis.
/// Requires L_inner to be a sublattice of L_outer.
FgAbGroup quotient_presentation(const Lattice& outer, const Lattice& inner);

}  // namespace kgsf

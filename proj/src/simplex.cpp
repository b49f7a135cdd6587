#include "kgsf/simplex.hpp"

#include "kgsf/error.hpp"

namespace kgsf {

RatLP make_lp(Eigen::Index num_vars) {
  RatLP lp;
  lp.a.resize(0, num_vars);
  lp.b.resize(0);
  return lp;
}

void RatLP::add_row(const RatVector& coeffs, Relation rel, const Rational& rhs) {
  if (coeffs.size() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "constraint row has wrong number of coefficients");
  const Eigen::Index m = a.rows();
  a.conservativeResize(m + 1, Eigen::NoChange);
  a.row(m) = coeffs.transpose();
  b.conservativeResize(m + 1);
  b(m) = rhs;
  relations.push_back(rel);
}

bool RatLP::satisfied_by(const RatVector& x) const {
  if (x.size() != a.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Rational lhs = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) lhs += a(i, j) * x(j);
    const bool ok = relations[static_cast<std::size_t>(i)] == Relation::Equal ? lhs == b(i) : lhs >= b(i);
    if (!ok) return false;
  }
  return true;
}

namespace {

// Dense phase-one tableau. Column layout: for each free variable j the pair
// (x_j^+, x_j^-) at 2j, 2j+1; then one surplus per inequality row; then one
// artificial per row; the right-hand side is kept separately.
class PhaseOne {
 public:
  explicit PhaseOne(const RatLP& lp) : n_(lp.num_vars()), m_(lp.num_rows()) {
    Eigen::Index surplus = 0;
    for (auto r : lp.relations)
      if (r == Relation::GreaterEq) ++surplus;
    structural_ = 2 * n_ + surplus;
    cols_ = structural_ + m_;
    t_ = RatMatrix::Zero(m_, cols_);
    rhs_ = RatVector::Zero(m_);
    basis_.resize(static_cast<std::size_t>(m_));

    Eigen::Index s = 2 * n_;
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index j = 0; j < n_; ++j) {
        t_(i, 2 * j) = lp.a(i, j);
        t_(i, 2 * j + 1) = -lp.a(i, j);
      }
      if (lp.relations[static_cast<std::size_t>(i)] == Relation::GreaterEq) t_(i, s++) = -1;
      rhs_(i) = lp.b(i);
      if (rhs_(i) < 0) {
        t_.row(i) = -t_.row(i);
        rhs_(i) = -rhs_(i);
      }
      t_(i, structural_ + i) = 1;
      basis_[static_cast<std::size_t>(i)] = structural_ + i;
    }
    // Reduced costs of the phase-one objective (sum of artificials).
    obj_ = RatVector::Zero(cols_);
    obj_rhs_ = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index j = 0; j < structural_; ++j) obj_(j) -= t_(i, j);
      obj_rhs_ -= rhs_(i);
    }
  }

  std::optional<RatVector> solve() {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < structural_; ++j) {
        if (obj_(j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;
      Eigen::Index leave = -1;
      Rational best_ratio;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (t_(i, enter) <= 0) continue;
        Rational ratio = rhs_(i) / t_(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      // The phase-one objective is bounded below by zero, so a ratio row exists.
      if (leave < 0) throw Error(ErrorCode::InternalDisagreement, "unbounded phase-one objective");
      pivot(leave, enter);
    }
    if (obj_rhs_ != 0) return std::nullopt;

    RatVector values = RatVector::Zero(cols_);
    for (Eigen::Index i = 0; i < m_; ++i) values(basis_[static_cast<std::size_t>(i)]) = rhs_(i);
    RatVector x(n_);
    for (Eigen::Index j = 0; j < n_; ++j) x(j) = values(2 * j) - values(2 * j + 1);
    return x;
  }

 private:
  void pivot(Eigen::Index row, Eigen::Index col) {
    const Rational p = t_(row, col);
    t_.row(row) /= p;
    rhs_(row) /= p;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == row || t_(i, col) == 0) continue;
      const Rational f = t_(i, col);
      t_.row(i) -= f * t_.row(row);
      rhs_(i) -= f * rhs_(row);
    }
    if (obj_(col) != 0) {
      const Rational f = obj_(col);
      obj_ -= f * t_.row(row).transpose();
      obj_rhs_ -= f * rhs_(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Eigen::Index n_;
  Eigen::Index m_;
  Eigen::Index structural_ = 0;
  Eigen::Index cols_ = 0;
  RatMatrix t_;
  RatVector rhs_;
  RatVector obj_;
  Rational obj_rhs_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

std::optional<RatVector> exact_lp_feasible(const RatLP& lp) {
  if (lp.num_rows() == 0) return RatVector::Zero(lp.num_vars());
  PhaseOne tableau(lp);
  auto x = tableau.solve();
  if (x && !lp.satisfied_by(*x))
    throw Error(ErrorCode::InternalDisagreement, "simplex returned a point violating a constraint");
  return x;
}

}  // namespace kgsf

#pragma once

#include "kgsf/numeric.hpp"

#include <optional>
#include <vector>

namespace kgsf {

enum class Relation { GreaterEq, Equal };

/// Feasibility problem over free rational variables: each row reads
/// a_i . x >= b_i or a_i . x = b_i.
struct RatLP {
  RatMatrix a;
  RatVector b;
  std::vector<Relation> relations;

  Eigen::Index num_vars() const { return a.cols(); }
  Eigen::Index num_rows() const { return a.rows(); }

  void add_row(const RatVector& coeffs, Relation rel, const Rational& rhs);
  bool satisfied_by(const RatVector& x) const;
};

RatLP make_lp(Eigen::Index num_vars);

/// Phase-one simplex over exact rationals with Bland's rule. Free variables
/// are split into positive and negative parts. Returns a basic feasible
/// point, or nullopt when the system is infeasible.
std::optional<RatVector> exact_lp_feasible(const RatLP& lp);

}  // namespace kgsf

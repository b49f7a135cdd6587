#pragma once

#include "kgsf/intlin.hpp"
#include "kgsf/simplex.hpp"
#include "kgsf/twograph.hpp"

#include <optional>

namespace kgsf {

/// Either no nonzero nonnegative vector lies in im_Z(B), or a witness
/// x = B z with x >= 0, x != 0.
struct OrthantResult {
  bool found = false;
  IntVector x;
  IntVector z;
};

/// Decides im_Z(B) cap N^d != {0} by d exact LPs {B z >= 0, (B z)_i >= 1}.
/// A rational solution scales by its common denominator to an integer one,
/// so the answer is exact. The first coordinate (in index order) with a
/// feasible LP supplies the witness.
OrthantResult lattice_meets_orthant(const IntMatrix& b);

/// Brute force over 0 < ||x||_inf <= radius, x in N^d. Sound always,
/// complete only inside the box. Throws BoxTooLarge past ~10^7 points.
OrthantResult bounded_orthant_oracle(const IntMatrix& b, long radius);

inline constexpr double kMaxOracleBox = 1e7;

struct GraphTrace {
  /// tau(v) indexed by vertex; tau(v) >= 1 and tau = A_i tau for i = 1, 2.
  RatVector tau;
};

/// Searches for a faithful graph trace. Since the trace equations are
/// homogeneous, positivity is imposed as tau >= 1.
std::optional<GraphTrace> faithful_graph_trace(const TwoGraph& g);

bool is_graph_trace(const TwoGraph& g, const RatVector& tau);

}  // namespace kgsf

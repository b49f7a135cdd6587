#pragma once

#include "kgsf/feasibility.hpp"
#include "kgsf/twograph.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace kgsf {

enum class ConditionId { M, N, Trace, Cofinal, CoordAcyclic1, CoordAcyclic2, EqLem1 };
enum class Outcome { Holds, Fails, Assumed, Unknown };

std::string_view to_string(ConditionId id) noexcept;
std::string_view to_string(Outcome o) noexcept;

/// x = B1 f + B2 g with x in N^d \ {0}. For a 1-graph g is empty.
struct MatrixWitness {
  IntVector x;
  IntVector f;
  IntVector g;
};

struct TraceWitness {
  RatVector tau;
};

struct SetWitness {
  std::vector<std::string> vertices;
};

/// Edge ids of a closed walk, listed in the direction source -> range.
struct CycleWitness {
  std::vector<std::string> edges;
};

struct VectorWitness {
  IntVector m;
};

using Payload =
    std::variant<std::monostate, MatrixWitness, TraceWitness, SetWitness, CycleWitness, VectorWitness>;

struct ConditionStatus {
  ConditionId id = ConditionId::M;
  Outcome outcome = Outcome::Unknown;
  /// Decision-procedure tag for Holds, assertion token for Assumed,
  /// short explanation for Fails.
  std::string evidence;
  Payload payload;

  bool holds() const { return outcome == Outcome::Holds; }
  bool fails() const { return outcome == Outcome::Fails; }

  friend bool operator==(const ConditionStatus& a, const ConditionStatus& b);
};

/// B = [1 - A_1^t | 1 - A_2^t].
IntMatrix matrix_condition_block(const TwoGraph& g);

/// (M): im_Z(B) meets N^d only in 0.
ConditionStatus check_matrix_condition(const TwoGraph& g);
ConditionStatus check_matrix_condition_1graph(const IntMatrix& a);

/// Exact recheck of an (M) failure witness against g.
bool verify_matrix_witness(const TwoGraph& g, const MatrixWitness& w);

ConditionStatus check_trace(const TwoGraph& g);
ConditionStatus check_cofinal(const TwoGraph& g, LatticeMode mode = LatticeMode::Auto);
ConditionStatus check_coordinate_cycles(const TwoGraph& g, Color c);

/// Plug-in positivity oracle: returns true when it certifies (N) for g.
using PositivityOracle = std::function<bool(const TwoGraph&)>;

/// Assumption tokens are canonical graph hashes.
ConditionStatus condition_n_status(const TwoGraph& g, const std::set<std::string>& assumptions,
                                   const PositivityOracle& oracle = {});

/// Bounded search for m in N^H, 0 < |m|_inf <= radius, with m outside im_H
/// but its extension by zero inside im_Lambda.
ConditionStatus check_eq_lem1_bounded(const TwoGraph& g, const VertexSet& h, long radius);

}  // namespace kgsf

#pragma once

#include "kgsf/intlin.hpp"
#include "kgsf/twograph.hpp"

#include <string>
#include <vector>

namespace kgsf {

/// K-theory of a 1-graph from its adjacency matrix A:
/// K0 = coker(1 - A^t), K1 = ker(1 - A^t), vertex classes delta_v -> K0.
struct KTheory1Graph {
  FgAbGroup k0;
  IntMatrix k1_basis;

  Eigen::Index k1_rank() const { return k1_basis.cols(); }
  IntVector vertex_class(Eigen::Index v) const { return k0.to_coords(unit_vector(k0.ambient_dim(), v)); }
};

KTheory1Graph k_theory_1graph(const IntMatrix& a);

/// Group-level K-theory of a 2-graph.
///
/// K0 sits in 0 -> coker(1-A_1^t, 1-A_2^t) -> K0 -> ker[1-A_1^t; 1-A_2^t] -> 0
/// and abstractly splits, so K0 is reported as the direct sum. The splitting
/// is not natural for inclusions of hereditary subgraphs; use
/// inclusion_induced_maps for maps between K0 groups.
///
/// K1 = ker(1-A_1^t, 1-A_2^t) / im(g -> ((1-A_2^t) g, -(1-A_1^t) g)). The
/// sign on the second block is what makes the denominator land inside the
/// numerator kernel; it needs A_1 A_2 = A_2 A_1.
struct KTheory2Graph {
  std::vector<std::string> vertices;
  IntMatrix row_block;      // [1-A_1^t | 1-A_2^t], d x 2d
  IntMatrix stacked_block;  // [1-A_1^t ; 1-A_2^t], 2d x d
  IntMatrix koszul_map;     // [1-A_2^t ; -(1-A_1^t)], 2d x d
  FgAbGroup coker_summand;
  IntMatrix ker_summand_basis;
  IntMatrix k1_numerator_basis;
  FgAbGroup k1;

  Eigen::Index ker_summand_rank() const { return ker_summand_basis.cols(); }
  Eigen::Index k0_free_rank() const { return coker_summand.free_rank() + ker_summand_rank(); }
  const std::vector<BigInt>& k0_torsion() const { return coker_summand.torsion(); }
  std::string describe_k0() const;
};

KTheory2Graph k_theory_2graph(const TwoGraph& g);

/// Coordinates of delta_v in the cokernel summand.
IntVector vertex_class(const KTheory2Graph& k, std::string_view v);

/// Maps induced by the inclusion of a hereditary subgraph H Lambda:
/// iota_tilde on cokernel summands, the restriction of the inclusion to the
/// kernel summands (in basis coordinates), and ker(iota_tilde).
struct InducedMaps {
  IntMatrix inclusion;  // |Lambda^0| x |H|
  KTheory2Graph sub;
  KTheory2Graph ambient;
  GroupHom iota_tilde;
  IntMatrix iota_restricted;  // ambient ker rank x sub ker rank
  FgAbGroup ker_iota_tilde;
};

InducedMaps inclusion_induced_maps(const TwoGraph& g, const VertexSet& h);

/// The coordinate inclusion Z^H -> Z^{Lambda^0}.
IntMatrix inclusion_matrix(const VertexSet& h);

}  // namespace kgsf

#include "kgsf/ktheory.hpp"

namespace kgsf {

KTheory1Graph k_theory_1graph(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, "adjacency matrix must be square");
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) < 0) throw Error(ErrorCode::NegativeEntry, "adjacency matrix has a negative entry");
  const IntMatrix m = identity_matrix(a.rows()) - a.transpose();
  return {coker_presentation(m), kernel_basis(m)};
}

std::string KTheory2Graph::describe_k0() const {
  std::string out = coker_summand.describe();
  if (ker_summand_rank() == 0) return out;
  std::string ker = ker_summand_rank() == 1 ? "Z" : "Z^" + std::to_string(ker_summand_rank());
  return out == "0" ? ker : out + " + " + ker;
}

KTheory2Graph k_theory_2graph(const TwoGraph& g) {
  const Eigen::Index d = g.num_vertices();
  const IntMatrix id = identity_matrix(d);
  const IntMatrix b1 = id - g.adjacency(Color::Blue).transpose();
  const IntMatrix b2 = id - g.adjacency(Color::Red).transpose();

  KTheory2Graph k;
  k.vertices = g.description().vertices;
  k.row_block.resize(d, 2 * d);
  k.row_block << b1, b2;
  k.stacked_block.resize(2 * d, d);
  k.stacked_block << b1, b2;
  k.koszul_map.resize(2 * d, d);
  k.koszul_map << b2, -b1;

  if (!is_zero(IntMatrix(k.row_block * k.koszul_map)))
    throw Error(ErrorCode::AdjacencyNoncommuting, "K1 denominator escapes the numerator kernel");

  k.coker_summand = coker_presentation(k.row_block);
  k.ker_summand_basis = kernel_basis(k.stacked_block);
  k.k1_numerator_basis = kernel_basis(k.row_block);
  const Lattice numerator = Lattice::span(k.k1_numerator_basis);
  k.k1 = quotient_presentation(numerator, Lattice::span(k.koszul_map));
  return k;
}

IntVector vertex_class(const KTheory2Graph& k, std::string_view v) {
  for (std::size_t i = 0; i < k.vertices.size(); ++i)
    if (k.vertices[i] == v)
      return k.coker_summand.to_coords(unit_vector(static_cast<Eigen::Index>(k.vertices.size()), static_cast<Eigen::Index>(i)));
  throw Error(ErrorCode::UnknownVertex, "no vertex named '" + std::string(v) + "'");
}

IntMatrix inclusion_matrix(const VertexSet& h) {
  const auto members = h.indices();
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(h.universe()), static_cast<Eigen::Index>(members.size()));
  for (std::size_t j = 0; j < members.size(); ++j) m(static_cast<Eigen::Index>(members[j]), static_cast<Eigen::Index>(j)) = 1;
  return m;
}

InducedMaps inclusion_induced_maps(const TwoGraph& g, const VertexSet& h) {
  const TwoGraph sub = restriction(g, h);
  KTheory2Graph ks = k_theory_2graph(sub);
  KTheory2Graph ka = k_theory_2graph(g);
  const IntMatrix inc = inclusion_matrix(h);

  GroupHom iota_tilde = induced_map(inc, ks.coker_summand, ka.coker_summand);

  const Lattice ambient_ker = Lattice::span(ka.ker_summand_basis);
  IntMatrix restricted(ka.ker_summand_rank(), ks.ker_summand_rank());
  for (Eigen::Index j = 0; j < ks.ker_summand_rank(); ++j) {
    IntVector image = inc * ks.ker_summand_basis.col(j);
    auto m = ambient_ker.contains(image);
    if (!m.member)
      throw Error(ErrorCode::NotWellDefined,
                  "kernel vector " + format_vector(image) + " of the subgraph leaves the ambient kernel");
    restricted.col(j) = m.coefficients;
  }

  // ker(iota_tilde) = {m in Z^H : iota(m) in im_Lambda} / im_H
  const Lattice preimage = preimage_lattice(inc, ka.coker_summand.relations());
  FgAbGroup kernel = quotient_presentation(preimage, ks.coker_summand.relations());

  return {inc, std::move(ks), std::move(ka), std::move(iota_tilde), std::move(restricted), std::move(kernel)};
}

}  // namespace kgsf

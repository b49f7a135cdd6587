#include "kgsf/intlin.hpp"

#include <sstream>

namespace kgsf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::DuplicateEdgeId: return "DuplicateEdgeId";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::SquareEndpointMismatch: return "SquareEndpointMismatch";
    case ErrorCode::FactorizationNotBijective: return "FactorizationNotBijective";
    case ErrorCode::SourceVertex: return "SourceVertex";
    case ErrorCode::AdjacencyNoncommuting: return "AdjacencyNoncommuting";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotHereditary: return "NotHereditary";
    case ErrorCode::NotSaturatedHereditary: return "NotSaturatedHereditary";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::FullSet: return "FullSet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotWellDefined: return "NotWellDefined";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::IterationCap: return "IterationCap";
    case ErrorCode::InternalDisagreement: return "InternalDisagreement";
    case ErrorCode::BadSubset: return "BadSubset";
    case ErrorCode::NotAChain: return "NotAChain";
    case ErrorCode::NotMaximal: return "NotMaximal";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Lattice
// ---------------------------------------------------------------------------

Lattice::Lattice(Eigen::Index ambient_dim) : dim_(ambient_dim), basis_(ambient_dim, 0) {}

Lattice Lattice::span(const IntMatrix& generators) {
  Lattice out(generators.rows());
  auto form = hnf(generators);
  out.basis_ = std::move(form.H);
  out.pivot_rows_ = std::move(form.pivot_rows);
  return out;
}

Lattice Lattice::full(Eigen::Index ambient_dim) { return span(identity_matrix(ambient_dim)); }

Membership Lattice::contains(const IntVector& x) const {
  if (x.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch,
                "vector of length " + std::to_string(x.size()) + " tested against lattice in Z^" +
                    std::to_string(dim_));
  Membership out;
  out.coefficients = IntVector::Zero(rank());
  IntVector residual = x;
  for (Eigen::Index j = 0; j < rank(); ++j) {
    const Eigen::Index p = pivot_rows_[static_cast<std::size_t>(j)];
    const BigInt& pivot = basis_(p, j);
    if (residual(p) % pivot != 0) return out;
    BigInt z = residual(p) / pivot;
    if (z != 0) residual -= z * basis_.col(j);
    out.coefficients(j) = z;
  }
  for (Eigen::Index i = 0; i < dim_; ++i)
    if (residual(i) != 0) return out;
  out.member = true;
  return out;
}

bool Lattice::contains_all(const IntMatrix& columns) const {
  for (Eigen::Index j = 0; j < columns.cols(); ++j)
    if (!contains(columns.col(j)).member) return false;
  return true;
}

bool Lattice::is_subset_of(const Lattice& other) const {
  return dim_ == other.dim_ && other.contains_all(basis_);
}

bool operator==(const Lattice& a, const Lattice& b) {
  return a.dim_ == b.dim_ && a.basis_.cols() == b.basis_.cols() && a.basis_ == b.basis_;
}

Membership lattice_membership(const Lattice& lattice, const IntVector& x) {
  return lattice.contains(x);
}

Lattice preimage_lattice(const IntMatrix& phi, const Lattice& lattice) {
  if (phi.rows() != lattice.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch,
                "map into Z^" + std::to_string(phi.rows()) + " but lattice lives in Z^" +
                    std::to_string(lattice.ambient_dim()));
  const Eigen::Index d = phi.cols();
  const Eigen::Index r = lattice.rank();
  IntMatrix combined(phi.rows(), d + r);
  combined.leftCols(d) = phi;
  combined.rightCols(r) = -lattice.basis();
  IntMatrix k = kernel_basis(combined);
  return Lattice::span(k.topRows(d));
}

// ---------------------------------------------------------------------------
// FgAbGroup
// ---------------------------------------------------------------------------

FgAbGroup FgAbGroup::cokernel(const IntMatrix& m) {
  FgAbGroup g;
  const Eigen::Index rows = m.rows();
  auto s = snf(m);
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = s.rank; i < rows; ++i) picked.push_back(i);
  g.free_rank_ = rows - s.rank;
  for (Eigen::Index i = 0; i < s.rank; ++i) {
    if (s.D(i, i) > 1) {
      picked.push_back(i);
      g.torsion_.push_back(s.D(i, i));
    }
  }
  const auto n = static_cast<Eigen::Index>(picked.size());
  g.projection_.resize(n, rows);
  g.lift_.resize(rows, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g.projection_.row(j) = s.U.row(picked[static_cast<std::size_t>(j)]);
    g.lift_.col(j) = s.U_inv.col(picked[static_cast<std::size_t>(j)]);
  }
  g.relations_ = Lattice::span(m);
  return g;
}

BigInt FgAbGroup::torsion_order() const {
  BigInt order = 1;
  for (const auto& t : torsion_) order *= t;
  return order;
}

IntVector FgAbGroup::normalize(const IntVector& coords) const {
  if (coords.size() != num_generators())
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector has wrong length");
  IntVector out = coords;
  for (std::size_t j = 0; j < torsion_.size(); ++j) {
    const auto idx = free_rank_ + static_cast<Eigen::Index>(j);
    out(idx) = floor_mod(BigInt(out(idx)), torsion_[j]);
  }
  return out;
}

IntVector FgAbGroup::to_coords(const IntVector& x) const {
  if (x.size() != ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "ambient vector has wrong length");
  return normalize(projection_ * x);
}

std::string FgAbGroup::describe() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << 'Z';
    if (free_rank_ > 1) os << '^' << free_rank_;
    first = false;
  }
  for (const auto& t : torsion_) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

FgAbGroup coker_presentation(const IntMatrix& m) { return FgAbGroup::cokernel(m); }

FgAbGroup quotient_presentation(const Lattice& outer, const Lattice& inner) {
  if (outer.ambient_dim() != inner.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "lattices live in different ambient spaces");
  IntMatrix rel(outer.rank(), inner.rank());
  for (Eigen::Index j = 0; j < inner.rank(); ++j) {
    auto m = outer.contains(inner.basis().col(j));
    if (!m.member) throw Error(ErrorCode::NotWellDefined, "inner lattice is not contained in outer");
    rel.col(j) = m.coefficients;
  }
  return FgAbGroup::cokernel(rel);
}

// ---------------------------------------------------------------------------
// GroupHom
// ---------------------------------------------------------------------------

GroupHom::GroupHom(FgAbGroup src, FgAbGroup dst, IntMatrix matrix)
    : src_(std::move(src)), dst_(std::move(dst)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != dst_.num_generators() || matrix_.cols() != src_.num_generators())
    throw Error(ErrorCode::DimensionMismatch, "homomorphism matrix has wrong shape");
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j) matrix_.col(j) = dst_.normalize(matrix_.col(j));
}

IntVector GroupHom::apply(const IntVector& coords) const {
  return dst_.normalize(matrix_ * src_.normalize(coords));
}

bool GroupHom::is_identity() const {
  if (matrix_.rows() != matrix_.cols()) return false;
  if (src_.torsion() != dst_.torsion() || src_.free_rank() != dst_.free_rank()) return false;
  return matrix_ == IntMatrix::Identity(matrix_.rows(), matrix_.cols());
}

bool GroupHom::is_zero() const { return kgsf::is_zero(matrix_); }

GroupHom induced_map(const IntMatrix& f, const FgAbGroup& src, const FgAbGroup& dst) {
  if (f.cols() != src.ambient_dim() || f.rows() != dst.ambient_dim())
    throw Error(ErrorCode::DimensionMismatch, "ambient map does not match the presentations");
  const IntMatrix& rel = src.relations().basis();
  for (Eigen::Index j = 0; j < rel.cols(); ++j) {
    IntVector image = f * rel.col(j);
    if (!dst.relations().contains(image).member)
      throw Error(ErrorCode::NotWellDefined,
                  "relation " + format_vector(IntVector(rel.col(j))) + " maps to " +
                      format_vector(image) + ", which is nonzero in the target");
  }
  IntMatrix matrix(dst.num_generators(), src.num_generators());
  for (Eigen::Index j = 0; j < src.num_generators(); ++j)
    matrix.col(j) = dst.to_coords(f * src.lift(j));
  return GroupHom(src, dst, std::move(matrix));
}

GroupHom compose(const GroupHom& second, const GroupHom& first) {
  if (first.target().num_generators() != second.source().num_generators() ||
      first.target().torsion() != second.source().torsion())
    throw Error(ErrorCode::DimensionMismatch, "homomorphisms are not composable");
  return GroupHom(first.source(), second.target(), second.matrix() * first.matrix());
}

}  // namespace kgsf

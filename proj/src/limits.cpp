#include "kgsf/limits.hpp"

#include <algorithm>

namespace kgsf {

DirectLimitSystem::DirectLimitSystem(IntMatrix phi) : phi_(std::move(phi)) {
  if (phi_.rows() != phi_.cols()) throw Error(ErrorCode::NotSquare, "bonding map must be square");
}

namespace {

void check_dim(const DirectLimitSystem& sys, const LimitElement& a) {
  if (a.g.size() != sys.dim())
    throw Error(ErrorCode::DimensionMismatch, "limit element has length " + std::to_string(a.g.size()) +
                                                  ", system has dimension " + std::to_string(sys.dim()));
  if (a.level < 1) throw Error(ErrorCode::DimensionMismatch, "limit levels start at 1");
}

}  // namespace

Lattice eventual_kernel(const DirectLimitSystem& sys) {
  const IntMatrix power = matrix_power(sys.phi(), static_cast<std::size_t>(sys.dim()));
  return Lattice::span(kernel_basis(power));
}

bool limit_equal(const DirectLimitSystem& sys, const LimitElement& a, const LimitElement& b) {
  check_dim(sys, a);
  check_dim(sys, b);
  const std::size_t t = std::max(a.level, b.level);
  IntVector diff = matrix_power(sys.phi(), t - a.level) * a.g - matrix_power(sys.phi(), t - b.level) * b.g;
  return eventual_kernel(sys).contains(diff).member;
}

KernelRepresentative in_ker_one_minus_phi_inf(const DirectLimitSystem& sys, const LimitElement& a) {
  check_dim(sys, a);
  KernelRepresentative out;
  const IntMatrix one_minus = sys.one_minus_phi();
  IntVector image = one_minus * a.g;
  if (!eventual_kernel(sys).contains(image).member) return out;
  // phi^k commutes with 1 - phi, so phi^k g is fixed once phi^k kills (1 - phi) g.
  IntVector g = a.g;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(sys.dim()); ++k) {
    if (is_zero(image)) {
      out.member = true;
      out.steps = k;
      out.representative = g;
      out.level = a.level + k;
      return out;
    }
    image = sys.phi() * image;
    g = sys.phi() * g;
  }
  throw Error(ErrorCode::InternalDisagreement, "eventual kernel did not stabilize at exponent d");
}

PreimageChain stable_preimage_chain(const IntMatrix& phi, const Lattice& lattice) {
  const auto cap = static_cast<std::size_t>(4 * std::max<Eigen::Index>(phi.rows(), 1));
  Lattice current = lattice;
  for (std::size_t step = 0; step <= cap; ++step) {
    Lattice next = preimage_lattice(phi, current);
    if (!current.is_subset_of(next))
      throw Error(ErrorCode::NotWellDefined, "preimage chain is not ascending; phi does not preserve the lattice");
    if (next == current) return {std::move(current), step};
    current = std::move(next);
  }
  throw Error(ErrorCode::IterationCap, "preimage chain failed to stabilize within 4d steps");
}

bool in_im_one_minus_phi_inf(const DirectLimitSystem& sys, const LimitElement& a) {
  check_dim(sys, a);
  const auto chain = stable_preimage_chain(sys.phi(), Lattice::span(sys.one_minus_phi()));
  return chain.stable.contains(a.g).member;
}

bool prop45_ker_membership(const TwoGraph& g, const LimitElement& a) {
  const DirectLimitSystem sys(g.adjacency(Color::Blue).transpose());
  check_dim(sys, a);
  const Eigen::Index d = sys.dim();
  const IntMatrix one_minus_a2 = identity_matrix(d) - g.adjacency(Color::Red).transpose();

  const bool via_eventual_kernel = eventual_kernel(sys).contains(one_minus_a2 * a.g).member;

  bool via_powers = false;
  IntVector x = a.g;
  for (Eigen::Index k = 0; k <= d && !via_powers; ++k) {
    if (is_zero(IntVector(one_minus_a2 * x))) via_powers = true;
    x = sys.phi() * x;
  }
  if (via_eventual_kernel != via_powers)
    throw Error(ErrorCode::InternalDisagreement, "kernel characterizations disagree on " + format_vector(a.g));
  return via_eventual_kernel;
}

bool prop45_im_membership(const TwoGraph& g, const LimitElement& a) {
  const DirectLimitSystem sys(g.adjacency(Color::Blue).transpose());
  check_dim(sys, a);
  const IntMatrix one_minus_a2 = identity_matrix(sys.dim()) - g.adjacency(Color::Red).transpose();
  const auto chain = stable_preimage_chain(sys.phi(), Lattice::span(one_minus_a2));
  return chain.stable.contains(a.g).member;
}

}  // namespace kgsf

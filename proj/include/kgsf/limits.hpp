#pragma once

#include "kgsf/intlin.hpp"
#include "kgsf/twograph.hpp"

#include <cstddef>

namespace kgsf {

/// The constant tower Z^d -> Z^d -> ... with bonding endomorphism phi.
class DirectLimitSystem {
 public:
  explicit DirectLimitSystem(IntMatrix phi);

  Eigen::Index dim() const { return phi_.rows(); }
  const IntMatrix& phi() const { return phi_; }
  /// 1 - phi
  IntMatrix one_minus_phi() const { return identity_matrix(dim()) - phi_; }

 private:
  IntMatrix phi_;
};

/// [g]_n: the image of g from level n (levels start at 1).
struct LimitElement {
  std::size_t level = 1;
  IntVector g;
};

/// ker(phi^d), which equals the union of all ker(phi^k).
Lattice eventual_kernel(const DirectLimitSystem& sys);

bool limit_equal(const DirectLimitSystem& sys, const LimitElement& a, const LimitElement& b);

struct KernelRepresentative {
  bool member = false;
  std::size_t steps = 0;            // k
  IntVector representative;         // phi^k g, with (1 - phi) phi^k g = 0
  std::size_t level = 0;            // n + k
};

/// Whether [g]_n lies in ker(1 - phi_inf); when it does, the returned
/// representative is an honest element of ker(1 - phi) at level n + k.
KernelRepresentative in_ker_one_minus_phi_inf(const DirectLimitSystem& sys, const LimitElement& a);

/// Stable value of the ascending chain {x : phi^k x in L}, k = 0, 1, ...
/// Needs phi(L) contained in L. Throws IterationCap after 4d steps.
struct PreimageChain {
  Lattice stable;
  std::size_t steps = 0;
};

PreimageChain stable_preimage_chain(const IntMatrix& phi, const Lattice& lattice);

/// Whether [g]_n lies in im(1 - phi_inf), i.e. phi^k g in im(1 - phi) for some k.
bool in_im_one_minus_phi_inf(const DirectLimitSystem& sys, const LimitElement& a);

/// Membership of [g]_n in ker(1 - A_2^t) inside lim(Z^{Lambda^0}, A_1^t),
/// decided through the eventual kernel of A_1^t and again by searching
/// k <= d for (A_1^t)^k g in ker(1 - A_2^t). Throws InternalDisagreement if
/// the two routes differ.
bool prop45_ker_membership(const TwoGraph& g, const LimitElement& a);

/// Membership of [g]_n in im(1 - A_2^t) inside lim(Z^{Lambda^0}, A_1^t),
/// via the stabilized preimage chain of im(1 - A_2^t) under A_1^t.
bool prop45_im_membership(const TwoGraph& g, const LimitElement& a);

}  // namespace kgsf

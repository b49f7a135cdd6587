#pragma once

#include "kgsf/conditions.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kgsf {

enum class VerdictKind { StablyFinite, NotStablyFinite, Conditional, Inconclusive };

std::string_view to_string(VerdictKind k) noexcept;

struct PendingHypothesis {
  ConditionId condition = ConditionId::N;
  std::vector<std::string> subject;
  std::string token;

  friend bool operator==(const PendingHypothesis&, const PendingHypothesis&) = default;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  /// Exactly the Assumed leaves when kind is Conditional; empty otherwise.
  std::vector<PendingHypothesis> pending;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// A checked condition on the induced subgraph of the root graph spanned by
/// `subject`.
struct CertLeaf {
  std::string role;
  VertexSet subject;
  std::string graph_hash;
  ConditionStatus status;
};

struct CertNode {
  std::string rule;
  std::string citation;
  std::string graph_hash;
  /// Vertices of the graph this node is about, as a subset of the root.
  VertexSet subject;
  /// The chain, or the single ideal H, in root terms.
  std::vector<VertexSet> sets;
  std::vector<CertLeaf> leaves;
  std::vector<CertNode> children;
  VerdictKind outcome = VerdictKind::Inconclusive;
};

struct Certificate {
  std::string graph_hash;
  LatticeMode lattice_mode = LatticeMode::Exhaustive;
  Verdict verdict;
  CertNode root;
};

struct CertifyOptions {
  /// Canonical graph hashes for which (N) is asserted by the user.
  std::set<std::string> assumptions;
  PositivityOracle oracle;
  /// Cumulative vertex sets of the root; empty set and full set are implied.
  std::optional<std::vector<VertexSet>> chain_hint;
  LatticeMode lattice_mode = LatticeMode::Auto;
  /// When set, (M) is cross-checked with the bounded oracle on this radius.
  std::optional<long> oracle_box;
  std::size_t max_chains = 256;
};

Certificate certify(const TwoGraph& g, const CertifyOptions& opts = {});

/// One extension step across a proper nonempty
/// saturated hereditary H.
Certificate certify_extension(const TwoGraph& g, const VertexSet& h, const CertifyOptions& opts = {});

/// chain runs from the empty set to the full vertex set and must be maximal.
Certificate certify_with_chain(const TwoGraph& g, const std::vector<VertexSet>& chain,
                               const CertifyOptions& opts = {});

/// Every maximal chain of the saturated hereditary lattice, in lexicographic
/// order of the lattice ordering, at most `limit` of them.
std::vector<std::vector<VertexSet>> maximal_chains(const SatHerLattice& lattice, std::size_t limit);

/// Re-evaluates every leaf and every node outcome of cert against g.
/// Throws ReplayMismatch on the first disagreement.
Verdict replay(const TwoGraph& g, const Certificate& cert, const CertifyOptions& opts = {});

/// Assumed leaves of the tree, in depth-first order, without repeats.
std::vector<PendingHypothesis> assumed_leaves(const TwoGraph& g, const CertNode& node);

}  // namespace kgsf

#include "kgsf/certifier.hpp"

#include <algorithm>
#include <map>

namespace kgsf {

std::string_view to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::StablyFinite: return "StablyFinite";
    case VerdictKind::NotStablyFinite: return "NotStablyFinite";
    case VerdictKind::Conditional: return "Conditional";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

constexpr std::string_view kR1 = "R1-matrix-necessity";
constexpr std::string_view kR2 = "R2-trace";
constexpr std::string_view kR3 = "R3-cofinal";
constexpr std::string_view kR4 = "R4-chain";
constexpr std::string_view kChain = "maximal-chain";
constexpr std::string_view kExtension = "extension";
constexpr std::string_view kFallback = "fallback";

constexpr std::string_view kOracleRole = "M-bounded-oracle";

std::string citation_for(std::string_view rule) {
  if (rule == kR1) return "(M) is a necessary condition for stable finiteness";
  if (rule == kR2) return "a faithful graph trace gives a faithful trace on the C*-algebra";
  if (rule == kR3) return "for cofinal 2-graphs (M) is necessary and sufficient for stable finiteness";
  if (rule == kR4) return "best outcome over the maximal chains of saturated hereditary sets";
  if (rule == kChain)
    return "quotients along a maximal chain satisfy (M) and the intermediate restrictions satisfy (N)";
  if (rule == kExtension)
    return "ideal and quotient stably finite, with (M) for the graph and (N) for the ideal";
  return "no rule applies; condition report only";
}

struct Context {
  Context(const TwoGraph& g, const CertifyOptions& o) : root(g), opts(o) {}

  const TwoGraph& root;
  const CertifyOptions& opts;
  LatticeMode used_mode = LatticeMode::Exhaustive;
  std::map<std::string, CertNode> memo;
};

TwoGraph graph_on(const Context& ctx, const VertexSet& subject) {
  return subject.is_full() ? ctx.root : induced_subgraph(ctx.root, subject);
}

/// Local set of the subgraph spanned by subject, in root indices.
VertexSet lift(const VertexSet& subject, const VertexSet& local) {
  const auto members = subject.indices();
  VertexSet out(subject.universe());
  for (auto i : local.indices()) out.insert(members.at(i));
  return out;
}

VertexSet minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out(a.universe());
  for (auto i : a.indices())
    if (!b.contains(i)) out.insert(i);
  return out;
}

SatHerLattice lattice_of(Context& ctx, const TwoGraph& g) {
  auto lattice = sat_her_lattice(g, ctx.opts.lattice_mode);
  if (lattice.mode == LatticeMode::Semilattice) ctx.used_mode = LatticeMode::Semilattice;
  return lattice;
}

ConditionStatus evaluate(Context& ctx, std::string_view role, ConditionId id, const TwoGraph& g) {
  if (role == kOracleRole) {
    const long radius = ctx.opts.oracle_box.value_or(1);
    const auto r = bounded_orthant_oracle(matrix_condition_block(g), radius);
    if (!r.found) return {ConditionId::M, Outcome::Holds, "bounded:R=" + std::to_string(radius), {}};
    const Eigen::Index d = g.num_vertices();
    return {ConditionId::M, Outcome::Fails, "bounded oracle witness", MatrixWitness{r.x, r.z.head(d), r.z.tail(d)}};
  }
  switch (id) {
    case ConditionId::M: return check_matrix_condition(g);
    case ConditionId::N: return condition_n_status(g, ctx.opts.assumptions, ctx.opts.oracle);
    case ConditionId::Trace: return check_trace(g);
    case ConditionId::Cofinal: {
      auto status = check_cofinal(g, ctx.opts.lattice_mode);
      if (status.evidence == "lattice-semilattice") ctx.used_mode = LatticeMode::Semilattice;
      return status;
    }
    case ConditionId::CoordAcyclic1: return check_coordinate_cycles(g, Color::Blue);
    case ConditionId::CoordAcyclic2: return check_coordinate_cycles(g, Color::Red);
    case ConditionId::EqLem1: break;
  }
  throw Error(ErrorCode::ReplayMismatch, "leaf condition " + std::string(to_string(id)) + " is not replayable");
}

CertLeaf make_leaf(Context& ctx, std::string role, ConditionId id, const VertexSet& subject) {
  const TwoGraph g = graph_on(ctx, subject);
  ConditionStatus status = evaluate(ctx, role, id, g);
  return {std::move(role), subject, g.hash(), std::move(status)};
}

std::size_t count_assumed(const CertNode& n) {
  std::size_t total = 0;
  for (const auto& l : n.leaves) total += l.status.outcome == Outcome::Assumed;
  for (const auto& c : n.children) total += count_assumed(c);
  return total;
}

int rank(VerdictKind k) {
  switch (k) {
    case VerdictKind::StablyFinite: return 3;
    case VerdictKind::Conditional: return 2;
    case VerdictKind::NotStablyFinite: return 1;
    case VerdictKind::Inconclusive: return 0;
  }
  return 0;
}

/// Sufficient-condition combination: everything must hold, assumptions
/// downgrade to Conditional, anything else leaves the question open.
VerdictKind combine_sufficient(const CertNode& n) {
  bool assumed = false;
  for (const auto& l : n.leaves) {
    if (l.status.outcome == Outcome::Assumed) assumed = true;
    else if (l.status.outcome != Outcome::Holds) return VerdictKind::Inconclusive;
  }
  for (const auto& c : n.children) {
    if (c.outcome == VerdictKind::Conditional) assumed = true;
    else if (c.outcome != VerdictKind::StablyFinite) return VerdictKind::Inconclusive;
  }
  return assumed ? VerdictKind::Conditional : VerdictKind::StablyFinite;
}

VerdictKind node_outcome(const CertNode& n) {
  if (n.rule == kR1) {
    for (const auto& l : n.leaves)
      if (l.role == "M" && l.status.fails()) return VerdictKind::NotStablyFinite;
    return VerdictKind::Inconclusive;
  }
  if (n.rule == kR2 || n.rule == kR3) {
    for (const auto& l : n.leaves)
      if (!l.status.holds()) return VerdictKind::Inconclusive;
    return VerdictKind::StablyFinite;
  }
  if (n.rule == kChain || n.rule == kExtension) return combine_sufficient(n);
  if (n.rule == kR4) {
    VerdictKind best = VerdictKind::Inconclusive;
    for (const auto& c : n.children)
      if (c.outcome != VerdictKind::NotStablyFinite && rank(c.outcome) > rank(best)) best = c.outcome;
    return best;
  }
  return VerdictKind::Inconclusive;
}

void check_chain(const SatHerLattice& lattice, const std::vector<VertexSet>& chain, std::size_t n) {
  if (chain.size() < 2) throw Error(ErrorCode::NotAChain, "a chain needs at least the empty and the full set");
  for (const auto& s : chain)
    if (s.universe() != n) throw Error(ErrorCode::NotAChain, "chain element over the wrong vertex set");
  if (!chain.front().empty()) throw Error(ErrorCode::NotAChain, "chain must start at the empty set");
  if (!chain.back().is_full()) throw Error(ErrorCode::NotAChain, "chain must end at the full vertex set");
  auto in_lattice = [&](const VertexSet& s) {
    return std::find(lattice.sets.begin(), lattice.sets.end(), s) != lattice.sets.end();
  };
  for (std::size_t m = 0; m < chain.size(); ++m) {
    if (!in_lattice(chain[m]))
      throw Error(ErrorCode::NotAChain, "chain element #" + std::to_string(m) + " is not saturated hereditary");
    if (m > 0 && (!chain[m - 1].is_subset_of(chain[m]) || chain[m - 1] == chain[m]))
      throw Error(ErrorCode::NotAChain, "chain is not strictly increasing at element #" + std::to_string(m));
  }
  for (std::size_t m = 1; m < chain.size(); ++m)
    for (const auto& t : lattice.sets)
      if (chain[m - 1].is_subset_of(t) && t.is_subset_of(chain[m]) && t != chain[m - 1] && t != chain[m])
        throw Error(ErrorCode::NotMaximal,
                    "a saturated hereditary set lies strictly between chain elements #" + std::to_string(m - 1) +
                        " and #" + std::to_string(m));
}

CertNode chain_node(Context& ctx, const VertexSet& subject, const std::vector<VertexSet>& local_chain) {
  const TwoGraph g = graph_on(ctx, subject);
  check_chain(lattice_of(ctx, g), local_chain, static_cast<std::size_t>(g.num_vertices()));

  CertNode node;
  node.rule = kChain;
  node.citation = citation_for(kChain);
  node.graph_hash = g.hash();
  node.subject = subject;
  for (const auto& s : local_chain) node.sets.push_back(lift(subject, s));
  const std::size_t n = local_chain.size() - 2;
  for (std::size_t m = 0; m <= n; ++m)
    node.leaves.push_back(make_leaf(ctx, "M", ConditionId::M, minus(subject, node.sets[m])));
  for (std::size_t m = 1; m <= n; ++m)
    node.leaves.push_back(make_leaf(ctx, "N", ConditionId::N, node.sets[m]));
  node.outcome = node_outcome(node);
  return node;
}

CertNode certify_node(Context& ctx, const VertexSet& subject) {
  const TwoGraph g = graph_on(ctx, subject);
  const std::string hash = g.hash();
  if (auto it = ctx.memo.find(hash); it != ctx.memo.end()) return it->second;

  CertNode node;
  node.graph_hash = hash;
  node.subject = subject;
  auto finish = [&](std::string_view rule) {
    node.rule = rule;
    node.citation = citation_for(rule);
    node.outcome = node_outcome(node);
    ctx.memo.emplace(hash, node);
    return node;
  };

  node.leaves.push_back(make_leaf(ctx, "M", ConditionId::M, subject));
  const bool m_holds = node.leaves.back().status.holds();
  if (ctx.opts.oracle_box) {
    node.leaves.push_back(make_leaf(ctx, std::string(kOracleRole), ConditionId::M, subject));
    if (node.leaves.back().status.fails() == m_holds)
      throw Error(ErrorCode::InternalDisagreement, "exact (M) decision and bounded oracle disagree");
  }
  if (!m_holds) return finish(kR1);

  node.leaves.push_back(make_leaf(ctx, "Cofinal", ConditionId::Cofinal, subject));
  if (node.leaves.back().status.holds()) {
    CertLeaf trace = make_leaf(ctx, "Trace", ConditionId::Trace, subject);
    if (trace.status.holds()) {
      node.leaves.push_back(std::move(trace));
      return finish(kR2);
    }
    return finish(kR3);
  }

  std::vector<std::vector<VertexSet>> chains;
  if (ctx.opts.chain_hint && subject.is_full()) {
    std::vector<VertexSet> hint;
    if (ctx.opts.chain_hint->empty() || !ctx.opts.chain_hint->front().empty()) hint.push_back(g.no_vertices());
    for (const auto& s : *ctx.opts.chain_hint) hint.push_back(s);
    if (!hint.back().is_full()) hint.push_back(g.all_vertices());
    chains.push_back(std::move(hint));
  } else {
    chains = maximal_chains(lattice_of(ctx, g), ctx.opts.max_chains);
  }

  std::vector<CertNode> tried;
  for (const auto& c : chains) tried.push_back(chain_node(ctx, subject, c));

  const CertNode* best = nullptr;
  for (const auto& t : tried) {
    if (t.outcome == VerdictKind::Inconclusive) continue;
    if (!best || rank(t.outcome) > rank(best->outcome) ||
        (t.outcome == best->outcome && count_assumed(t) < count_assumed(*best)))
      best = &t;
  }
  if (best) {
    node.children.push_back(*best);
    return finish(kR4);
  }

  node.leaves.push_back(make_leaf(ctx, "CoordAcyclic1", ConditionId::CoordAcyclic1, subject));
  node.leaves.push_back(make_leaf(ctx, "CoordAcyclic2", ConditionId::CoordAcyclic2, subject));
  node.children = std::move(tried);
  return finish(kFallback);
}

Certificate wrap(Context& ctx, CertNode root) {
  Certificate cert;
  cert.graph_hash = ctx.root.hash();
  cert.lattice_mode = ctx.used_mode;
  cert.verdict.kind = root.outcome;
  if (root.outcome == VerdictKind::Conditional) cert.verdict.pending = assumed_leaves(ctx.root, root);
  cert.root = std::move(root);
  return cert;
}

void replay_node(Context& ctx, const CertNode& n) {
  const TwoGraph g = graph_on(ctx, n.subject);
  if (g.hash() != n.graph_hash)
    throw Error(ErrorCode::ReplayMismatch, "graph hash of node " + n.rule + " does not match");
  for (const auto& l : n.leaves) {
    CertLeaf again = make_leaf(ctx, l.role, l.status.id, l.subject);
    if (again.graph_hash != l.graph_hash || !(again.status == l.status))
      throw Error(ErrorCode::ReplayMismatch,
                  "leaf " + l.role + " on " + describe(ctx.root, l.subject) + " re-evaluates to " +
                      std::string(to_string(again.status.outcome)));
  }
  for (const auto& c : n.children) replay_node(ctx, c);
  if (node_outcome(n) != n.outcome)
    throw Error(ErrorCode::ReplayMismatch, "outcome of node " + n.rule + " does not follow from its inputs");
}

void collect_assumed(const TwoGraph& g, const CertNode& n, std::vector<PendingHypothesis>& out) {
  for (const auto& l : n.leaves) {
    if (l.status.outcome != Outcome::Assumed) continue;
    PendingHypothesis p{l.status.id, g.names_of(l.subject), l.status.evidence};
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  for (const auto& c : n.children) collect_assumed(g, c, out);
}

}  // namespace

std::vector<PendingHypothesis> assumed_leaves(const TwoGraph& g, const CertNode& node) {
  std::vector<PendingHypothesis> out;
  collect_assumed(g, node, out);
  return out;
}

Certificate certify(const TwoGraph& g, const CertifyOptions& opts) {
  Context ctx(g, opts);
  CertNode root = certify_node(ctx, g.all_vertices());
  return wrap(ctx, std::move(root));
}

Certificate certify_extension(const TwoGraph& g, const VertexSet& h, const CertifyOptions& opts) {
  if (h.universe() != static_cast<std::size_t>(g.num_vertices()))
    throw Error(ErrorCode::BadSubset, "vertex set over the wrong graph");
  if (h.empty() || h.is_full()) throw Error(ErrorCode::BadSubset, "H must be proper and nonempty");
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw Error(ErrorCode::BadSubset, describe(g, h) + " is not saturated hereditary");

  Context ctx(g, opts);
  CertNode node;
  node.rule = kExtension;
  node.citation = citation_for(kExtension);
  node.graph_hash = g.hash();
  node.subject = g.all_vertices();
  node.sets.push_back(h);
  node.leaves.push_back(make_leaf(ctx, "M", ConditionId::M, node.subject));
  node.leaves.push_back(make_leaf(ctx, "N", ConditionId::N, h));
  node.children.push_back(certify_node(ctx, h));
  node.children.push_back(certify_node(ctx, h.complement()));
  node.outcome = node_outcome(node);
  return wrap(ctx, std::move(node));
}

Certificate certify_with_chain(const TwoGraph& g, const std::vector<VertexSet>& chain, const CertifyOptions& opts) {
  Context ctx(g, opts);
  return wrap(ctx, chain_node(ctx, g.all_vertices(), chain));
}

std::vector<std::vector<VertexSet>> maximal_chains(const SatHerLattice& lattice, std::size_t limit) {
  std::vector<std::vector<VertexSet>> out;
  if (lattice.sets.empty()) return out;
  const auto& sets = lattice.sets;
  auto covers = [&](const VertexSet& s) {
    std::vector<VertexSet> up;
    for (const auto& t : sets) {
      if (t == s || !s.is_subset_of(t)) continue;
      bool minimal = true;
      for (const auto& u : sets)
        if (u != s && u != t && s.is_subset_of(u) && u.is_subset_of(t)) {
          minimal = false;
          break;
        }
      if (minimal) up.push_back(t);
    }
    return up;
  };
  std::vector<VertexSet> current{sets.front()};
  std::function<void()> extend = [&] {
    if (out.size() >= limit) return;
    if (current.back().is_full()) {
      out.push_back(current);
      return;
    }
    for (const auto& t : covers(current.back())) {
      current.push_back(t);
      extend();
      current.pop_back();
    }
  };
  extend();
  return out;
}

Verdict replay(const TwoGraph& g, const Certificate& cert, const CertifyOptions& opts) {
  if (g.hash() != cert.graph_hash) throw Error(ErrorCode::ReplayMismatch, "certificate is for a different graph");
  Context ctx(g, opts);
  replay_node(ctx, cert.root);
  Verdict v;
  v.kind = node_outcome(cert.root);
  if (v.kind == VerdictKind::Conditional) v.pending = assumed_leaves(g, cert.root);
  if (!(v == cert.verdict)) throw Error(ErrorCode::ReplayMismatch, "verdict does not follow from the tree");
  return v;
}

}  // namespace kgsf

#include "kgsf/certifier.hpp"
#include "kgsf/io.hpp"

#include "support/error_code.hpp"
#include "support/random_graph.hpp"

#include <gtest/gtest.h>

namespace kgsf {
namespace {

using namespace kgsf::testing;

CertifyOptions assuming(const TwoGraph& g, std::vector<std::string> names) {
  CertifyOptions opts;
  opts.assumptions.insert(restriction(g, g.vertex_set(names)).hash());
  return opts;
}

const CertLeaf* leaf(const CertNode& n, std::string_view role) {
  for (const auto& l : n.leaves)
    if (l.role == role) return &l;
  return nullptr;
}

TwoGraph g2_plus_t() {
  const TwoGraph two = g_2();
  TwoGraphDescription d = two.description();
  d.vertices.push_back("t");
  d.blue_edges.push_back({"at", "t", "t"});
  d.red_edges.push_back({"bt", "t", "t"});
  d.squares.push_back({"at", "bt", "bt", "at"});
  return TwoGraph::validate(d);
}

TEST(Certify, TorusByTrace) {
  const Certificate c = certify(g_t());
  EXPECT_EQ(c.verdict.kind, VerdictKind::StablyFinite);
  EXPECT_EQ(c.root.rule, "R2-trace");
  ASSERT_NE(leaf(c.root, "Trace"), nullptr);
  EXPECT_TRUE(leaf(c.root, "Cofinal")->status.holds());
}

TEST(Certify, TwoLoopsFailM) {
  const TwoGraph g = g_2();
  const Certificate c = certify(g);
  EXPECT_EQ(c.verdict.kind, VerdictKind::NotStablyFinite);
  EXPECT_EQ(c.root.rule, "R1-matrix-necessity");
  const auto& w = std::get<MatrixWitness>(leaf(c.root, "M")->status.payload);
  EXPECT_EQ(w.x, from_list({1}));
  EXPECT_TRUE(verify_matrix_witness(g, w));
}

TEST(Certify, HookIsCofinal) {
  const Certificate c = certify(g_vh());
  EXPECT_EQ(c.verdict.kind, VerdictKind::StablyFinite);
  EXPECT_TRUE(leaf(c.root, "Cofinal")->status.holds());
}

TEST(Certify, DisjointToriNeedN) {
  const TwoGraph g = g_d();
  const Certificate bare = certify(g);
  EXPECT_EQ(bare.verdict.kind, VerdictKind::Inconclusive);
  EXPECT_EQ(bare.root.rule, "fallback");
  EXPECT_EQ(bare.root.children.size(), 2U);

  const Certificate c = certify(g, assuming(g, {"v"}));
  EXPECT_EQ(c.verdict.kind, VerdictKind::Conditional);
  EXPECT_EQ(c.root.rule, "R4-chain");
  ASSERT_EQ(c.verdict.pending.size(), 1U);
  EXPECT_EQ(c.verdict.pending[0].condition, ConditionId::N);
  EXPECT_EQ(c.verdict.pending[0].subject, std::vector<std::string>{"v"});
  ASSERT_EQ(c.root.children.size(), 1U);
  const CertNode& chain = c.root.children[0];
  EXPECT_EQ(chain.sets, (std::vector<VertexSet>{g.no_vertices(), g.vertex_set({"v"}), g.all_vertices()}));
}

TEST(Certify, OracleCertifiedNIsUnconditional) {
  CertifyOptions opts;
  opts.oracle = [](const TwoGraph& g) { return g.num_vertices() == 1; };
  EXPECT_EQ(certify(g_d(), opts).verdict.kind, VerdictKind::StablyFinite);
}

TEST(Certify, R1DominatesInUnions) {
  const TwoGraph g = g2_plus_t();
  EXPECT_EQ(certify(g).verdict.kind, VerdictKind::NotStablyFinite);
  const Certificate ext = certify_extension(g, g.vertex_set({"t"}), assuming(g, {"t"}));
  EXPECT_EQ(ext.verdict.kind, VerdictKind::Inconclusive);
}

TEST(CertifyExtension, DisjointTori) {
  const TwoGraph g = g_d();
  const Certificate c = certify_extension(g, g.vertex_set({"v"}), assuming(g, {"v"}));
  EXPECT_EQ(c.verdict.kind, VerdictKind::Conditional);
  EXPECT_EQ(c.root.children.size(), 2U);
  for (const auto& child : c.root.children) EXPECT_EQ(child.outcome, VerdictKind::StablyFinite);
}

TEST(CertifyExtension, BadSubsets) {
  const TwoGraph vh = g_vh();
  EXPECT_EQ(error_code_of([&] { (void)certify_extension(vh, vh.no_vertices()); }), ErrorCode::BadSubset);
  EXPECT_EQ(error_code_of([&] { (void)certify_extension(vh, vh.all_vertices()); }), ErrorCode::BadSubset);
  EXPECT_EQ(error_code_of([&] { (void)certify_extension(vh, vh.vertex_set({"h"})); }), ErrorCode::BadSubset);
}

TEST(CertifyWithChain, Examples) {
  const TwoGraph d = g_d();
  const Certificate c =
      certify_with_chain(d, {d.no_vertices(), d.vertex_set({"v"}), d.all_vertices()}, assuming(d, {"v"}));
  EXPECT_EQ(c.verdict.kind, VerdictKind::Conditional);
  // (M) on Lambda and on the torus at w, (N) on the torus at v
  ASSERT_EQ(c.root.leaves.size(), 3U);
  EXPECT_EQ(c.root.leaves[1].subject, d.vertex_set({"w"}));

  const TwoGraph t = g_t();
  EXPECT_EQ(certify_with_chain(t, {t.no_vertices(), t.all_vertices()}).verdict.kind, VerdictKind::StablyFinite);

  EXPECT_EQ(error_code_of([&] { (void)certify_with_chain(d, {d.no_vertices(), d.all_vertices()}); }),
            ErrorCode::NotMaximal);
  EXPECT_EQ(error_code_of([&] { (void)certify_with_chain(d, {d.vertex_set({"v"}), d.all_vertices()}); }),
            ErrorCode::NotAChain);
}

TEST(CertifyWithChain, HintIsUsed) {
  const TwoGraph d = g_d();
  CertifyOptions opts = assuming(d, {"w"});
  opts.chain_hint = std::vector<VertexSet>{d.vertex_set({"w"})};
  const Certificate c = certify(d, opts);
  EXPECT_EQ(c.verdict.kind, VerdictKind::Conditional);
  EXPECT_EQ(c.verdict.pending[0].subject, std::vector<std::string>{"w"});
}

TEST(MaximalChains, DisjointTori) {
  const TwoGraph d = g_d();
  const auto chains = maximal_chains(sat_her_lattice(d), 256);
  ASSERT_EQ(chains.size(), 2U);
  EXPECT_EQ(chains[0][1], d.vertex_set({"v"}));
  EXPECT_EQ(chains[1][1], d.vertex_set({"w"}));
  EXPECT_EQ(maximal_chains(sat_her_lattice(d), 1).size(), 1U);
}

TEST(OracleBox, AgreesWithExactDecision) {
  CertifyOptions opts;
  opts.oracle_box = 4;
  for (const TwoGraph& g : {g_t(), g_2(), g_vh(), g_c3(), g_d()}) {
    const Certificate c = certify(g, opts);
    ASSERT_NE(leaf(c.root, "M-bounded-oracle"), nullptr);
    EXPECT_EQ(replay(g, c, opts), c.verdict);
  }
}

TEST(Replay, RejectsTampering) {
  const TwoGraph d = g_d();
  const CertifyOptions opts = assuming(d, {"v"});
  Certificate c = certify(d, opts);
  EXPECT_EQ(replay(d, c, opts), c.verdict);
  // without the assumption the (N) leaf no longer re-evaluates to Assumed
  EXPECT_EQ(error_code_of([&] { (void)replay(d, c); }), ErrorCode::ReplayMismatch);

  Certificate flipped = c;
  flipped.root.children[0].outcome = VerdictKind::StablyFinite;
  EXPECT_EQ(error_code_of([&] { (void)replay(d, flipped, opts); }), ErrorCode::ReplayMismatch);

  Certificate other = c;
  other.graph_hash = g_t().hash();
  EXPECT_EQ(error_code_of([&] { (void)replay(d, other, opts); }), ErrorCode::ReplayMismatch);
}

TEST(CertifyProperty, ReplayDeterminismAndSoundness) {
  Rng rng(71);
  for (int trial = 0; trial < 120; ++trial) {
    const TwoGraph g = random_two_graph(rng, 4, 2);
    CertifyOptions opts;
    if (trial % 3 == 0) opts.oracle = [](const TwoGraph& sub) { return sub.num_vertices() == 1; };
    const Certificate a = certify(g, opts);
    const Certificate b = certify(g, opts);
    ASSERT_EQ(to_json(g, a).dump(), to_json(g, b).dump());
    ASSERT_EQ(replay(g, a, opts), a.verdict);
    // R1 never coexists with a stably finite route
    const bool m_holds = check_matrix_condition(g).holds();
    ASSERT_EQ(a.verdict.kind == VerdictKind::NotStablyFinite, !m_holds);
    if (check_trace(g).holds()) {
      ASSERT_NE(a.verdict.kind, VerdictKind::NotStablyFinite);
    }
    if (a.verdict.kind != VerdictKind::Conditional) {
      ASSERT_TRUE(a.verdict.pending.empty());
    }
    ASSERT_EQ(a.verdict.pending.size(), assumed_leaves(g, a.root).size());
  }
}

}  // namespace
}  // namespace kgsf

// Acceptance run: one PASS/FAIL line per criterion, each against its time budget.

#include "kgsf/io.hpp"
#include "kgsf/limits.hpp"

#include "support/oracles.hpp"
#include "support/process.hpp"
#include "support/random_graph.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace kgsf;
using namespace kgsf::testing;

namespace fs = std::filesystem;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

bool unimodular(const IntMatrix& u) { return abs_value(oracle::determinant(u)) == 1; }

std::string cli(const std::string& args, int* code) {
  const auto r = run(quote(KGSF_CLI) + " " + args);
  *code = r.exit_code;
  return r.out;
}

std::string corpus_file(const std::string& name) { return (fs::path(KGSF_CORPUS_DIR) / (name + ".json")).string(); }

// ---------------------------------------------------------------------------

void snf_hnf_suite() {
  Rng rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % 6), c = 1 + static_cast<Eigen::Index>(rng() % 6);
    const IntMatrix m = random_matrix(rng, r, c, 9);
    const std::string at = "\n" + format_matrix(m);

    const auto s = snf(m);
    require(IntMatrix(s.U * m * s.V) == s.D, "U M V != D" + at);
    require(unimodular(s.U) && unimodular(s.V), "non-unimodular transform" + at);
    const Eigen::Index n = std::min(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j)
        if (i != j) require(s.D(i, j) == 0, "D not diagonal" + at);
    for (Eigen::Index k = 0; k < n; ++k) {
      require(s.D(k, k) >= 0, "negative invariant factor" + at);
      if (k + 1 < n) {
        const BigInt& a = s.D(k, k);
        const BigInt& b = s.D(k + 1, k + 1);
        require(a == 0 ? b == 0 : b % a == 0, "divisibility chain broken" + at);
      }
    }
    if (r <= 4 && c <= 4) {
      const auto dd = oracle::determinantal_divisors(m);
      BigInt prod = 1;
      for (Eigen::Index k = 0; k < n; ++k) {
        prod *= s.D(k, k);
        require(prod == dd[static_cast<std::size_t>(k)], "invariant factors disagree with minors" + at);
      }
    }

    const auto h = hnf(m);
    require(unimodular(h.U), "HNF transform not unimodular" + at);
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(c));
    for (Eigen::Index j = 0; j < c; ++j) perm[static_cast<std::size_t>(j)] = j;
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix shuffled(r, c);
    for (Eigen::Index j = 0; j < c; ++j) shuffled.col(j) = m.col(perm[static_cast<std::size_t>(j)]);
    require(hnf(shuffled).H == h.H, "HNF changed under a column shuffle" + at);
  }
}

void cokernel_oracle() {
  Rng rng(1002);
  int counted = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const Eigen::Index r = 1 + trial % 3, c = 1 + (trial / 3) % 3;
    const IntMatrix m = random_matrix(rng, r, c, 3);
    const FgAbGroup g = coker_presentation(m);
    const Eigen::Index rank = oracle::rank_by_minors(m);
    require(g.free_rank() == r - rank, "free rank wrong\n" + format_matrix(m));
    if (rank == r) {
      ++counted;
      require(g.torsion_order() == oracle::coset_count(m), "torsion order != coset count\n" + format_matrix(m));
    } else {
      // torsion of a rank-deficient cokernel: product of the nonzero invariant factors = d_rank
      const auto dd = oracle::determinantal_divisors(m);
      const BigInt expected = rank == 0 ? BigInt(1) : dd[static_cast<std::size_t>(rank - 1)];
      require(g.torsion_order() == expected, "torsion order != d_rank\n" + format_matrix(m));
    }
  }
  require(counted >= 100, "too few full-rank samples");
}

void saturation_oracle() {
  Rng rng(1003);
  for (int trial = 0; trial < 500; ++trial) {
    const TwoGraph g = random_two_graph(rng, 5, 2);
    const VertexSet h = random_hereditary(g, rng);
    require(saturate(g, h).mask() == oracle::smallest_sat_her_superset(g, h.mask()), "saturate is not minimal");
    std::vector<VertexSet> expected;
    for (std::uint64_t mask : oracle::sat_her_scan(g))
      expected.push_back(VertexSet::from_mask(static_cast<std::size_t>(g.num_vertices()), mask));
    for (LatticeMode mode : {LatticeMode::Exhaustive, LatticeMode::Semilattice})
      require(sat_her_lattice(g, mode).sets == expected, "lattice differs from the predicate scan");
  }
}

void matrix_condition_vs_oracle() {
  Rng rng(1004);
  int witnessed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const TwoGraph g = random_two_graph(rng, 3, 3);
    const IntMatrix b = matrix_condition_block(g);
    const auto exact = lattice_meets_orthant(b);
    const auto box = bounded_orthant_oracle(b, 6);
    if (box.found) {
      ++witnessed;
      require(exact.found, "exact search missed an oracle witness\n" + format_matrix(b));
    }
    const ConditionStatus m = check_matrix_condition(g);
    require(m.holds() == !exact.found, "(M) status disagrees with the orthant search");
    if (m.fails()) require(verify_matrix_witness(g, std::get<MatrixWitness>(m.payload)), "bad witness");
  }
  require(witnessed > 0, "oracle never found a witness");

  require(check_matrix_condition(g_t()).holds(), "G_T should hold");
  require(check_matrix_condition(g_c3()).holds(), "G_C3 should hold");
  const TwoGraph two = g_2();
  const ConditionStatus s = check_matrix_condition(two);
  require(s.fails(), "G_2 should fail");
  const auto& w = std::get<MatrixWitness>(s.payload);
  require(verify_matrix_witness(two, w), "G_2 witness does not verify");
  const ConditionStatus back = condition_status_from_json(Json::parse(to_json(s).dump()));
  require(verify_matrix_witness(two, std::get<MatrixWitness>(back.payload)), "G_2 witness does not replay");
}

void ktheory_goldens() {
  const auto t = k_theory_2graph(g_t());
  require(t.coker_summand.free_rank() == 1 && t.coker_summand.is_free() && t.ker_summand_rank() == 1,
          "G_T K0 should be Z + Z");
  require(t.k1.free_rank() == 2 && t.k1.is_free(), "G_T K1 should be Z^2");
  const auto two = k_theory_2graph(g_2());
  require(two.coker_summand.is_trivial() && two.ker_summand_rank() == 0, "G_2 K0 should vanish");
  require(two.k1.is_trivial(), "G_2 K1 should vanish");
  const auto c3 = k_theory_2graph(g_c3());
  require(c3.k0_free_rank() == 2, "G_C3 K0 free rank should be 2");
  const auto one = k_theory_1graph(from_rows({{2}}));
  require(one.k0.is_trivial() && one.k1_rank() == 0, "A=[2] should have trivial K-theory");
}

void naturality_suite() {
  Rng rng(1006);
  for (int trial = 0; trial < 200; ++trial) {
    const TwoGraph g = random_two_graph(rng, 4, 2);
    const VertexSet h = random_hereditary(g, rng);
    const InducedMaps maps = inclusion_induced_maps(g, h);  // throws NotWellDefined otherwise
    for (std::size_t v : h.indices()) {
      const std::string& name = g.vertex_name(v);
      require(maps.iota_tilde.apply(vertex_class(maps.sub, name)) == vertex_class(maps.ambient, name),
              "vertex-class square fails at " + name);
    }
    const IntMatrix pushed = maps.inclusion * maps.sub.ker_summand_basis;
    require(is_zero(IntMatrix(maps.ambient.stacked_block * pushed)), "inclusion leaves the kernel summand");
    require(IntMatrix(maps.ambient.ker_summand_basis * maps.iota_restricted) == pushed,
            "restricted inclusion has wrong coordinates");
  }
}

void direct_limit_tower_suite() {
  Rng rng(1007);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index d = 1 + trial % 4;
    const IntMatrix phi = random_matrix(rng, d, d, 3);
    const DirectLimitSystem sys(phi);
    const Lattice im = Lattice::span(sys.one_minus_phi());
    const auto ud = static_cast<std::size_t>(d);
    const IntMatrix phi_d = matrix_power(phi, ud);

    for (int k = 0; k < 3; ++k) {
      const IntVector g = random_vector(rng, d, 4);
      require(in_im_one_minus_phi_inf(sys, {1, g}) == im.contains(g).member, "level-1 image equivalence fails");

      const LimitElement a{static_cast<std::size_t>(1 + k), g};
      const auto r = in_ker_one_minus_phi_inf(sys, a);
      require(r.member == is_zero(IntVector(phi_d * sys.one_minus_phi() * g)), "kernel membership wrong");
      if (r.member) {
        require(is_zero(IntVector(sys.one_minus_phi() * r.representative)), "representative not in ker(1-phi)");
        require(r.representative == IntVector(matrix_power(phi, r.steps) * g), "representative is not phi^k g");
        require(r.level == a.level + r.steps && limit_equal(sys, {r.level, r.representative}, a),
                "representative is a different limit element");
      }
    }

    auto ker = [&](std::size_t e) {
      const IntMatrix basis = kernel_basis(matrix_power(phi, e));
      return Lattice::span(basis.cols() ? basis : IntMatrix::Zero(d, 0));
    };
    const Lattice at_d = ker(ud);
    require(ker(ud + 1) == at_d && ker(2 * ud) == at_d, "kernel powers still growing past d");
    require(eventual_kernel(sys) == at_d, "eventual kernel differs from ker(phi^d)");
  }
}

void prop_basic_suite() {
  Rng rng(1008);
  for (int trial = 0; trial < 200; ++trial) {
    const TwoGraph g = random_two_graph(rng, 3, 3);
    const Eigen::Index d = g.num_vertices();
    const IntMatrix phi = g.adjacency(Color::Blue).transpose();
    const IntMatrix b2 = identity_matrix(d) - g.adjacency(Color::Red).transpose();
    const Lattice im = Lattice::span(b2);
    for (int k = 0; k < 4; ++k) {
      const LimitElement a{1, random_vector(rng, d, 3)};
      // prop45_ker_membership throws if its two routes disagree
      require(prop45_ker_membership(g, a) ==
                  is_zero(IntVector(matrix_power(phi, static_cast<std::size_t>(d)) * b2 * a.g)),
              "kernel characterization wrong");
      bool reached = false;
      for (std::size_t j = 0; j <= static_cast<std::size_t>(6 * d) && !reached; ++j)
        reached = im.contains(IntVector(matrix_power(phi, j) * a.g)).member;
      require(prop45_im_membership(g, a) == reached, "image characterization disagrees with phi-powers");
    }
  }
}

void forward_shadow() {
  Rng rng(1009);
  int checked = 0;
  for (int trial = 0; trial < 5000 && checked < 200; ++trial) {
    const TwoGraph g = random_two_graph(rng, 4, 2);
    if (!check_matrix_condition(g).holds()) continue;
    ++checked;
    const VertexSet h = random_hereditary(g, rng);
    require(check_matrix_condition(restriction(g, h)).holds(), "restriction lost (M)");
    require(!check_eq_lem1_bounded(g, h, 6).fails(), "bounded search found a violation");
  }
  require(checked == 200, "only " + std::to_string(checked) + " graphs satisfied (M)");
}

void trace_consistency() {
  auto check = [](const TwoGraph& g, const std::string& name) {
    if (faithful_graph_trace(g)) require(check_matrix_condition(g).holds(), name + " has a trace but fails (M)");
  };
  int files = 0;
  for (const auto& entry : fs::directory_iterator(KGSF_CORPUS_DIR)) {
    const std::string f = entry.path().filename().string();
    if (!f.ends_with(".json") || f.ends_with(".expect.json")) continue;
    ++files;
    check(TwoGraph::validate(read_description(entry.path())), f);
  }
  require(files > 0, "empty corpus");
  Rng rng(1010);
  for (int trial = 0; trial < 400; ++trial) check(random_two_graph(rng, 4, 3), "random graph");
}

void certifier_end_to_end() {
  int code = 0;
  const auto certify_json = [&](const std::string& name, const std::string& extra) {
    const std::string out = cli("certify " + quote(corpus_file(name)) + extra + " --format json", &code);
    return out;
  };
  const auto cofinal_leaf_holds = [](const Json& root) {
    for (const auto& l : root["leaves"])
      if (l["role"] == "Cofinal") return l["status"]["outcome"] == "Holds";
    return false;
  };

  const struct {
    std::string name, extra;
    int exit;
  } runs[] = {{"g_t", "", 0}, {"g_vh", "", 0}, {"g_2", "", 1}, {"g_d", "", 3}, {"g_d", " --assume-n v", 2}};

  for (const auto& r : runs) {
    const std::string out = certify_json(r.name, r.extra);
    require(code == r.exit, r.name + r.extra + " exited " + std::to_string(code));
    const Json j = Json::parse(out);

    if (r.name == "g_vh") require(cofinal_leaf_holds(j["root"]), "G_VH not certified through cofinality");
    if (r.name == "g_2") {
      require(j["root"]["rule"] == "R1-matrix-necessity", "G_2 not decided by R1");
      const ConditionStatus m = condition_status_from_json(j["root"]["leaves"][0]["status"]);
      require(m.fails() && verify_matrix_witness(TwoGraph::validate(read_description(corpus_file("g_2"))),
                                                 std::get<MatrixWitness>(m.payload)),
              "G_2 R1 witness does not verify");
    }
    if (r.exit == 2) {
      const auto& pending = j["verdict"]["pending"];
      require(pending.size() == 1 && pending[0]["subject"] == Json::array({"v"}) && pending[0]["condition"] == "N",
              "expected one pending N on {v}");
    } else {
      require(j["verdict"]["pending"].empty(), "unexpected pending entries");
    }

    require(certify_json(r.name, r.extra) == out, r.name + " certificate not byte-identical across runs");
    const fs::path cert = fs::temp_directory_path() / ("kgsf_acceptance_" + r.name + ".json");
    std::ofstream(cert, std::ios::binary) << out;
    const Json replayed =
        Json::parse(cli("replay " + quote(corpus_file(r.name)) + " " + quote(cert.string()) + r.extra + " --format json",
                        &code));
    require(code == r.exit && replayed["verdict"] == j["verdict"]["kind"], r.name + " replay changed the verdict");
    require(replayed["identical_to_fresh_run"] == true, r.name + " replay not byte-identical");
  }
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "SNF/HNF suite", 10, snf_hnf_suite},
      {2, "cokernel vs coset counting", 30, cokernel_oracle},
      {3, "saturation and lattice oracle", 60, saturation_oracle},
      {4, "(M) checker vs bounded oracle", 60, matrix_condition_vs_oracle},
      {5, "K-theory goldens", 1, ktheory_goldens},
      {6, "inclusion naturality", 60, naturality_suite},
      {7, "direct-limit tower suite", 60, direct_limit_tower_suite},
      {8, "direct-limit characterizations on 2-graphs", 60, prop_basic_suite},
      {9, "forward shadow on restrictions", 120, forward_shadow},
      {10, "trace implies (M)", 30, trace_consistency},
      {11, "certifier end-to-end", 5, certifier_end_to_end},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && secs >= c.budget_s) detail = "over the time budget";
    const bool pass = detail.empty();
    failed += !pass;
    std::ostringstream line;
    line << (pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << c.id << " " << c.name << " (" << std::fixed
         << std::setprecision(2) << secs << " s, limit " << std::setprecision(0) << c.budget_s << " s)";
    if (!pass) line << ": " << detail;
    std::cout << line.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << "\n";
  return failed ? 1 : 0;
}

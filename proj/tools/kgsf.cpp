// kgsf: command-line front end for the 2-graph toolkit.
//
// Exit codes: certify maps the verdict to 0 StablyFinite, 1 NotStablyFinite,
// 2 Conditional, 3 Inconclusive; check maps Holds/Fails/Assumed/Unknown the
// same way. 64 usage, 65 bad input document, 66 unreadable file, 70 internal.

#include "kgsf/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <unistd.h>

namespace {

using namespace kgsf;

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO); }

std::string paint(const std::string& text, VerdictKind k) {
  if (!use_color()) return text;
  const char* code = k == VerdictKind::StablyFinite      ? "32"
                     : k == VerdictKind::NotStablyFinite ? "31"
                     : k == VerdictKind::Conditional     ? "33"
                                                         : "36";
  return std::string("\x1b[") + code + "m" + text + "\x1b[0m";
}

TwoGraph load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return TwoGraph::validate(parse_description(buf.str()));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

VertexSet parse_set(const TwoGraph& g, std::string text) {
  if (!text.empty() && text.front() == '{') text.erase(0, 1);
  if (!text.empty() && text.back() == '}') text.pop_back();
  std::vector<std::string> names;
  if (!text.empty())
    for (auto& name : split(text, ',')) names.push_back(name);
  try {
    return g.vertex_set(names);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

bool looks_like_hash(const std::string& s) {
  return s.size() == 16 && s.find_first_not_of("0123456789abcdef") == std::string::npos;
}

/// An assumption token is a graph hash, or a hereditary vertex set whose
/// restriction is hashed.
std::set<std::string> resolve_assumptions(const TwoGraph& g, const std::vector<std::string>& tokens) {
  std::set<std::string> out;
  for (const auto& t : tokens) {
    if (looks_like_hash(t)) {
      out.insert(t);
      continue;
    }
    const VertexSet s = parse_set(g, t);
    try {
      out.insert(restriction(g, s).hash());
    } catch (const Error& e) {
      throw UsageError("--assume-n " + t + ": " + e.what());
    }
  }
  return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

void print_node(const TwoGraph& g, const CertNode& n, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  std::cout << pad << n.rule << " on " << describe(g, n.subject) << " -> " << paint(std::string(to_string(n.outcome)), n.outcome)
            << "\n";
  std::cout << pad << "  (" << n.citation << ")\n";
  if (!n.sets.empty()) {
    std::cout << pad << "  sets:";
    for (const auto& s : n.sets) std::cout << " " << describe(g, s);
    std::cout << "\n";
  }
  for (const auto& l : n.leaves)
    std::cout << pad << "  [" << l.role << " on " << describe(g, l.subject) << "] " << describe(l.status) << "\n";
  for (const auto& c : n.children) print_node(g, c, depth + 1);
}

int verdict_exit(VerdictKind k) {
  switch (k) {
    case VerdictKind::StablyFinite: return 0;
    case VerdictKind::NotStablyFinite: return 1;
    case VerdictKind::Conditional: return 2;
    case VerdictKind::Inconclusive: return 3;
  }
  return kExitInternal;
}

int outcome_exit(Outcome o) {
  switch (o) {
    case Outcome::Holds: return 0;
    case Outcome::Fails: return 1;
    case Outcome::Assumed: return 2;
    case Outcome::Unknown: return 3;
  }
  return kExitInternal;
}

struct Args {
  std::string path;
  std::string format = "text";
  std::string condition;
  std::vector<std::string> assume_n;
  std::string chain;
  bool exhaustive = false;
  long oracle_box = 0;
  std::string subset;
  long radius = 6;
  std::string certificate;
};

bool json(const Args& a) { return a.format == "json"; }

LatticeMode mode_of(const Args& a) { return a.exhaustive ? LatticeMode::Exhaustive : LatticeMode::Auto; }

CertifyOptions options_of(const TwoGraph& g, const Args& a) {
  CertifyOptions opts;
  opts.assumptions = resolve_assumptions(g, a.assume_n);
  opts.lattice_mode = mode_of(a);
  if (a.oracle_box > 0) opts.oracle_box = a.oracle_box;
  if (!a.chain.empty()) {
    std::vector<VertexSet> hint;
    for (const auto& part : split(a.chain, '|')) hint.push_back(parse_set(g, part));
    opts.chain_hint = std::move(hint);
  }
  return opts;
}

int cmd_validate(const Args& a) {
  std::optional<TwoGraph> loaded;
  try {
    loaded.emplace(load(a.path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    if (json(a))
      print_json({{"valid", false}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}});
    else
      std::cout << "invalid: " << e.what() << "\n";
    return 1;
  }
  const TwoGraph& g = *loaded;
  if (json(a)) {
    print_json(validate_report(g));
  } else {
    const auto& d = g.description();
    std::cout << "valid 2-graph " << g.hash() << ": " << d.vertices.size() << " vertices, " << d.blue_edges.size()
              << " blue edges, " << d.red_edges.size() << " red edges, " << d.squares.size() << " squares\n";
    std::cout << "A1 = " << format_matrix(g.adjacency(Color::Blue)) << "\n";
    std::cout << "A2 = " << format_matrix(g.adjacency(Color::Red)) << "\n";
  }
  return 0;
}

int cmd_ktheory(const Args& a) {
  const TwoGraph g = load(a.path);
  const Json r = ktheory_report(g);
  if (json(a)) {
    print_json(r);
    return 0;
  }
  const auto k = k_theory_2graph(g);
  std::cout << "K0 = " << k.describe_k0() << "  (coker " << k.coker_summand.describe() << ", ker rank "
            << k.ker_summand_rank() << ")\n";
  std::cout << "K1 = " << k.k1.describe() << "\n";
  for (const auto& v : k.vertices) std::cout << "[p_" << v << "] = " << format_vector(vertex_class(k, v)) << "\n";
  return 0;
}

int cmd_lattice(const Args& a) {
  const TwoGraph g = load(a.path);
  const Json r = lattice_report(g, mode_of(a));
  if (json(a)) {
    print_json(r);
    return 0;
  }
  std::cout << "saturated hereditary sets (" << r["mode"].get<std::string>() << "):";
  for (const auto& s : sat_her_lattice(g, mode_of(a)).sets) std::cout << " " << describe(g, s);
  std::cout << "\ncofinal: " << (r["cofinal"].get<bool>() ? "yes" : "no") << "\n";
  return 0;
}

int cmd_check(const Args& a) {
  const TwoGraph g = load(a.path);
  std::string c = a.condition;
  std::transform(c.begin(), c.end(), c.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  ConditionStatus s;
  if (c == "m") s = check_matrix_condition(g);
  else if (c == "n") s = condition_n_status(g, resolve_assumptions(g, a.assume_n));
  else if (c == "trace") s = check_trace(g);
  else if (c == "cofinal") s = check_cofinal(g, mode_of(a));
  else if (c == "coord1") s = check_coordinate_cycles(g, Color::Blue);
  else if (c == "coord2") s = check_coordinate_cycles(g, Color::Red);
  else if (c == "eqlem1") {
    if (a.subset.empty()) throw UsageError("--condition eqlem1 needs --subset");
    try {
      s = check_eq_lem1_bounded(g, parse_set(g, a.subset), a.radius);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotHereditary || e.code() == ErrorCode::EmptySet ||
          e.code() == ErrorCode::BoxTooLarge)
        throw UsageError(e.what());
      throw;
    }
  } else {
    throw UsageError("unknown condition '" + a.condition + "' (m, n, trace, cofinal, coord1, coord2, eqlem1)");
  }
  if (json(a)) print_json({{"graph_hash", g.hash()}, {"status", to_json(s)}});
  else std::cout << describe(s) << "\n";
  return outcome_exit(s.outcome);
}

int cmd_certify(const Args& a) {
  const TwoGraph g = load(a.path);
  const CertifyOptions opts = options_of(g, a);
  Certificate cert;
  try {
    cert = certify(g, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAChain || e.code() == ErrorCode::NotMaximal) throw UsageError(e.what());
    throw;
  }
  if (json(a)) {
    print_json(to_json(g, cert));
  } else {
    std::cout << "verdict: " << paint(std::string(to_string(cert.verdict.kind)), cert.verdict.kind) << "\n";
    for (const auto& p : cert.verdict.pending) {
      std::cout << "pending: " << to_string(p.condition) << " on {";
      for (std::size_t i = 0; i < p.subject.size(); ++i) std::cout << (i ? "," : "") << p.subject[i];
      std::cout << "} (token " << p.token << ")\n";
    }
    if (cert.lattice_mode == LatticeMode::Semilattice)
      std::cout << "note: lattice computed in semilattice mode\n";
    print_node(g, cert.root, 0);
  }
  return verdict_exit(cert.verdict.kind);
}

int cmd_replay(const Args& a) {
  const TwoGraph g = load(a.path);
  std::ifstream in(a.certificate, std::ios::binary);
  if (!in) throw NoInput("cannot read " + a.certificate);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, a.certificate + ": " + e.what());
  }
  const CertifyOptions opts = options_of(g, a);
  const Certificate cert = certificate_from_json(g, doc);
  const Verdict v = replay(g, cert, opts);
  if (to_json(g, cert) != doc) throw Error(ErrorCode::ReplayMismatch, "certificate does not round-trip");
  const std::string fresh = to_json(g, certify(g, opts)).dump(2);
  const bool identical = fresh == doc.dump(2);
  if (json(a)) {
    print_json({{"verdict", std::string(to_string(v.kind))}, {"replayed", true}, {"identical_to_fresh_run", identical}});
  } else {
    std::cout << "replay ok: " << paint(std::string(to_string(v.kind)), v.kind) << "\n";
    std::cout << "fresh certificate " << (identical ? "is byte-identical" : "differs") << "\n";
  }
  return verdict_exit(v.kind);
}

int cmd_canonical(const Args& a) {
  const TwoGraph g = load(a.path);
  std::cout << serialize(g.description());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgsf: K-theory, matrix conditions and stable finiteness certificates for finite 2-graphs"};
  app.require_subcommand(1);
  Args args;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", args.path, "graph document (JSON)")->required();
    sub->add_option("--format", args.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_lattice_flag = [&](CLI::App* sub) {
    sub->add_flag("--exhaustive-lattice", args.exhaustive, "force the exhaustive lattice scan");
  };
  auto add_assume = [&](CLI::App* sub) {
    sub->add_option("--assume-n", args.assume_n, "assert (N) for a graph hash or a hereditary vertex set v,w");
  };
  auto add_certify_flags = [&](CLI::App* sub) {
    add_assume(sub);
    add_lattice_flag(sub);
    sub->add_option("--chain", args.chain, "chain hint as cumulative vertex sets, e.g. \"v|v,w\"");
    sub->add_option("--oracle-box", args.oracle_box, "cross-check (M) by enumeration up to this radius")
        ->check(CLI::PositiveNumber);
  };

  std::map<CLI::App*, int (*)(const Args&)> handlers;
  auto* validate = app.add_subcommand("validate", "validate a graph document");
  add_common(validate);
  handlers[validate] = cmd_validate;

  auto* ktheory = app.add_subcommand("ktheory", "K0 and K1 as presented abelian groups");
  add_common(ktheory);
  handlers[ktheory] = cmd_ktheory;

  auto* lattice = app.add_subcommand("lattice", "saturated hereditary subsets and maximal chains");
  add_common(lattice);
  add_lattice_flag(lattice);
  handlers[lattice] = cmd_lattice;

  auto* check = app.add_subcommand("check", "evaluate one condition");
  add_common(check);
  add_lattice_flag(check);
  add_assume(check);
  check->add_option("--condition", args.condition, "m, n, trace, cofinal, coord1, coord2 or eqlem1")->required();
  check->add_option("--subset", args.subset, "hereditary set for eqlem1, e.g. v,w");
  check->add_option("--radius", args.radius, "box radius for eqlem1")->check(CLI::PositiveNumber);
  handlers[check] = cmd_check;

  auto* cert = app.add_subcommand("certify", "decide stable finiteness with a certificate");
  add_common(cert);
  add_certify_flags(cert);
  handlers[cert] = cmd_certify;

  auto* rep = app.add_subcommand("replay", "re-check a certificate emitted by certify --format json");
  add_common(rep);
  add_certify_flags(rep);
  rep->add_option("certificate", args.certificate, "certificate JSON")->required();
  handlers[rep] = cmd_replay;

  auto* canon = app.add_subcommand("canonical", "print the canonical serialization");
  add_common(canon);
  handlers[canon] = cmd_canonical;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    return handlers.at(chosen)(args);
  } catch (const UsageError& e) {
    std::cerr << "kgsf: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NoInput& e) {
    std::cerr << "kgsf: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const Error& e) {
    std::cerr << "kgsf: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InternalDisagreement:
      case ErrorCode::ReplayMismatch:
      case ErrorCode::IterationCap:
        return kExitInternal;
      default:
        return kExitData;
    }
  } catch (const std::exception& e) {
    std::cerr << "kgsf: " << e.what() << "\n";
    return kExitInternal;
  }
}

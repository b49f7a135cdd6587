#include "kgsf/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace kgsf {

namespace {

using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void structural(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::ParseError, "at " + (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const Json& require(const Json& obj, const std::string& pointer, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) structural(pointer, std::string("missing key '") + key + "'");
  return *it;
}

void only_keys(const Json& obj, const std::string& pointer, std::initializer_list<const char*> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      structural(pointer, "unexpected key '" + it.key() + "'");
}

std::string string_at(const Json& j, const std::string& pointer) {
  if (!j.is_string()) structural(pointer, "expected a string");
  return j.get<std::string>();
}

const Json& array_at(const Json& j, const std::string& pointer) {
  if (!j.is_array()) structural(pointer, "expected an array");
  return j;
}

std::vector<EdgeRecord> parse_edges(const Json& j, const std::string& pointer) {
  std::vector<EdgeRecord> out;
  std::size_t i = 0;
  for (const auto& e : array_at(j, pointer)) {
    const std::string p = pointer + "/" + std::to_string(i++);
    if (!e.is_object()) structural(p, "expected an edge object");
    only_keys(e, p, {"id", "range", "source"});
    out.push_back({string_at(require(e, p, "id"), p + "/id"), string_at(require(e, p, "range"), p + "/range"),
                   string_at(require(e, p, "source"), p + "/source")});
  }
  return out;
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

IntVector int_vector_from_json(const Json& j) {
  IntVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = big_from_json(j[i]);
  return v;
}

RatVector rat_vector_from_json(const Json& j) {
  RatVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = j[i].is_string() ? Rational(j[i].get<std::string>()) : Rational(big_from_json(j[i]));
  return v;
}

Json names(const TwoGraph& g, const VertexSet& s) { return g.names_of(s); }

ConditionId condition_from_string(const std::string& s) {
  for (auto id : {ConditionId::M, ConditionId::N, ConditionId::Trace, ConditionId::Cofinal, ConditionId::CoordAcyclic1,
                  ConditionId::CoordAcyclic2, ConditionId::EqLem1})
    if (to_string(id) == s) return id;
  throw Error(ErrorCode::ParseError, "unknown condition '" + s + "'");
}

Outcome outcome_from_string(const std::string& s) {
  for (auto o : {Outcome::Holds, Outcome::Fails, Outcome::Assumed, Outcome::Unknown})
    if (to_string(o) == s) return o;
  throw Error(ErrorCode::ParseError, "unknown outcome '" + s + "'");
}

VerdictKind verdict_from_string(const std::string& s) {
  for (auto k : {VerdictKind::StablyFinite, VerdictKind::NotStablyFinite, VerdictKind::Conditional,
                 VerdictKind::Inconclusive})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::ParseError, "unknown verdict '" + s + "'");
}

Json node_to_json(const TwoGraph& g, const CertNode& n) {
  Json j;
  j["rule"] = n.rule;
  j["citation"] = n.citation;
  j["graph_hash"] = n.graph_hash;
  j["subject"] = names(g, n.subject);
  j["sets"] = Json::array();
  for (const auto& s : n.sets) j["sets"].push_back(names(g, s));
  j["leaves"] = Json::array();
  for (const auto& l : n.leaves)
    j["leaves"].push_back(
        {{"role", l.role}, {"subject", names(g, l.subject)}, {"graph_hash", l.graph_hash}, {"status", to_json(l.status)}});
  j["children"] = Json::array();
  for (const auto& c : n.children) j["children"].push_back(node_to_json(g, c));
  j["outcome"] = std::string(to_string(n.outcome));
  return j;
}

CertNode node_from_json(const TwoGraph& g, const Json& j) {
  CertNode n;
  n.rule = j.at("rule").get<std::string>();
  n.citation = j.at("citation").get<std::string>();
  n.graph_hash = j.at("graph_hash").get<std::string>();
  n.subject = g.vertex_set(j.at("subject").get<std::vector<std::string>>());
  for (const auto& s : j.at("sets")) n.sets.push_back(g.vertex_set(s.get<std::vector<std::string>>()));
  for (const auto& l : j.at("leaves"))
    n.leaves.push_back({l.at("role").get<std::string>(), g.vertex_set(l.at("subject").get<std::vector<std::string>>()),
                        l.at("graph_hash").get<std::string>(), condition_status_from_json(l.at("status"))});
  for (const auto& c : j.at("children")) n.children.push_back(node_from_json(g, c));
  n.outcome = verdict_from_string(j.at("outcome").get<std::string>());
  return n;
}

}  // namespace

TwoGraphDescription parse_description(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
  }
  if (!doc.is_object()) structural("", "expected an object");
  only_keys(doc, "", {"vertices", "blue_edges", "red_edges", "squares"});

  TwoGraphDescription d;
  std::size_t i = 0;
  for (const auto& v : array_at(require(doc, "", "vertices"), "/vertices"))
    d.vertices.push_back(string_at(v, "/vertices/" + std::to_string(i++)));
  d.blue_edges = parse_edges(require(doc, "", "blue_edges"), "/blue_edges");
  d.red_edges = parse_edges(require(doc, "", "red_edges"), "/red_edges");
  i = 0;
  for (const auto& s : array_at(require(doc, "", "squares"), "/squares")) {
    const std::string p = "/squares/" + std::to_string(i++);
    if (!s.is_object()) structural(p, "expected a square object");
    only_keys(s, p, {"blue_in", "red_in", "red_out", "blue_out"});
    d.squares.push_back({string_at(require(s, p, "blue_in"), p + "/blue_in"),
                         string_at(require(s, p, "red_in"), p + "/red_in"),
                         string_at(require(s, p, "red_out"), p + "/red_out"),
                         string_at(require(s, p, "blue_out"), p + "/blue_out")});
  }
  return d;
}

TwoGraphDescription read_description(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_description(buf.str());
}

std::string serialize(const TwoGraphDescription& desc) {
  OrderedJson j;
  j["vertices"] = desc.vertices;
  for (const auto* color : {"blue_edges", "red_edges"}) {
    const auto& edges = std::string_view(color) == "blue_edges" ? desc.blue_edges : desc.red_edges;
    j[color] = OrderedJson::array();
    for (const auto& e : edges) j[color].push_back({{"id", e.id}, {"range", e.range}, {"source", e.source}});
  }
  j["squares"] = OrderedJson::array();
  for (const auto& s : desc.squares)
    j["squares"].push_back(
        {{"blue_in", s.blue_in}, {"red_in", s.red_in}, {"red_out", s.red_out}, {"blue_out", s.blue_out}});
  return j.dump(2) + "\n";
}

Json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

Json to_json(const Rational& v) { return v.str(); }

Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(to_json(v(i)));
  return j;
}

Json to_json(const RatVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(to_json(v(i)));
  return j;
}

Json to_json(const IntMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(to_json(IntVector(m.row(i).transpose())));
  return j;
}

Json to_json(const FgAbGroup& group) {
  Json torsion = Json::array();
  for (const auto& t : group.torsion()) torsion.push_back(to_json(t));
  return {{"free_rank", group.free_rank()}, {"torsion", torsion}, {"description", group.describe()}};
}

Json to_json(const ConditionStatus& status) {
  Json j;
  j["condition"] = std::string(to_string(status.id));
  j["outcome"] = std::string(to_string(status.outcome));
  j["evidence"] = status.evidence;
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, MatrixWitness>)
          j["witness"] = {{"kind", "matrix"}, {"x", to_json(w.x)}, {"f", to_json(w.f)}, {"g", to_json(w.g)}};
        else if constexpr (std::is_same_v<T, TraceWitness>)
          j["witness"] = {{"kind", "trace"}, {"tau", to_json(w.tau)}};
        else if constexpr (std::is_same_v<T, SetWitness>)
          j["witness"] = {{"kind", "set"}, {"vertices", w.vertices}};
        else if constexpr (std::is_same_v<T, CycleWitness>)
          j["witness"] = {{"kind", "cycle"}, {"edges", w.edges}};
        else if constexpr (std::is_same_v<T, VectorWitness>)
          j["witness"] = {{"kind", "vector"}, {"m", to_json(w.m)}};
      },
      status.payload);
  return j;
}

ConditionStatus condition_status_from_json(const Json& j) {
  ConditionStatus s;
  s.id = condition_from_string(j.at("condition").get<std::string>());
  s.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  s.evidence = j.at("evidence").get<std::string>();
  if (auto it = j.find("witness"); it != j.end()) {
    const auto kind = it->at("kind").get<std::string>();
    if (kind == "matrix")
      s.payload = MatrixWitness{int_vector_from_json(it->at("x")), int_vector_from_json(it->at("f")),
                                int_vector_from_json(it->at("g"))};
    else if (kind == "trace")
      s.payload = TraceWitness{rat_vector_from_json(it->at("tau"))};
    else if (kind == "set")
      s.payload = SetWitness{it->at("vertices").get<std::vector<std::string>>()};
    else if (kind == "cycle")
      s.payload = CycleWitness{it->at("edges").get<std::vector<std::string>>()};
    else if (kind == "vector")
      s.payload = VectorWitness{int_vector_from_json(it->at("m"))};
    else
      throw Error(ErrorCode::ParseError, "unknown witness kind '" + kind + "'");
  }
  return s;
}

std::string_view to_string(LatticeMode mode) noexcept {
  switch (mode) {
    case LatticeMode::Auto: return "auto";
    case LatticeMode::Exhaustive: return "exhaustive";
    case LatticeMode::Semilattice: return "semilattice";
  }
  return "?";
}

Json to_json(const TwoGraph& g, const Certificate& cert) {
  Json pending = Json::array();
  for (const auto& p : cert.verdict.pending)
    pending.push_back({{"condition", std::string(to_string(p.condition))}, {"subject", p.subject}, {"token", p.token}});
  return {{"graph_hash", cert.graph_hash},
          {"lattice_mode", std::string(to_string(cert.lattice_mode))},
          {"verdict", {{"kind", std::string(to_string(cert.verdict.kind))}, {"pending", pending}}},
          {"root", node_to_json(g, cert.root)}};
}

Certificate certificate_from_json(const TwoGraph& g, const Json& j) {
  try {
    Certificate c;
    c.graph_hash = j.at("graph_hash").get<std::string>();
    const auto mode = j.at("lattice_mode").get<std::string>();
    c.lattice_mode = mode == "semilattice" ? LatticeMode::Semilattice : LatticeMode::Exhaustive;
    c.verdict.kind = verdict_from_string(j.at("verdict").at("kind").get<std::string>());
    for (const auto& p : j.at("verdict").at("pending"))
      c.verdict.pending.push_back({condition_from_string(p.at("condition").get<std::string>()),
                                   p.at("subject").get<std::vector<std::string>>(), p.at("token").get<std::string>()});
    c.root = node_from_json(g, j.at("root"));
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed certificate: ") + e.what());
  }
}

Json validate_report(const TwoGraph& g) {
  const auto& d = g.description();
  return {{"valid", true},
          {"graph_hash", g.hash()},
          {"vertices", d.vertices},
          {"counts",
           {{"vertices", d.vertices.size()},
            {"blue_edges", d.blue_edges.size()},
            {"red_edges", d.red_edges.size()},
            {"squares", d.squares.size()}}},
          {"adjacency", {{"blue", to_json(g.adjacency(Color::Blue))}, {"red", to_json(g.adjacency(Color::Red))}}}};
}

Json ktheory_report(const TwoGraph& g) {
  const auto k = k_theory_2graph(g);
  Json classes;
  for (const auto& v : k.vertices) classes[v] = to_json(vertex_class(k, v));
  return {{"graph_hash", g.hash()},
          {"k0",
           {{"coker_summand", to_json(k.coker_summand)},
            {"ker_summand_rank", k.ker_summand_rank()},
            {"free_rank", k.k0_free_rank()},
            {"description", k.describe_k0()}}},
          {"k1", to_json(k.k1)},
          {"vertex_classes", classes}};
}

Json lattice_report(const TwoGraph& g, LatticeMode mode) {
  const auto lattice = sat_her_lattice(g, mode);
  Json sets = Json::array();
  for (const auto& s : lattice.sets) sets.push_back(names(g, s));
  Json chains = Json::array();
  for (const auto& chain : maximal_chains(lattice, 256)) {
    Json c = Json::array();
    for (const auto& s : chain) c.push_back(names(g, s));
    chains.push_back(c);
  }
  return {{"graph_hash", g.hash()},
          {"mode", std::string(to_string(lattice.mode))},
          {"sets", sets},
          {"cofinal", lattice.sets.size() <= 2},
          {"maximal_chains", chains}};
}

std::string describe(const ConditionStatus& status) {
  std::string out = std::string(to_string(status.id)) + ": " + std::string(to_string(status.outcome));
  std::visit(
      [&](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, MatrixWitness>) {
          out += " x=" + format_vector(w.x) + " f=" + format_vector(w.f);
          if (w.g.size() > 0) out += " g=" + format_vector(w.g);
        } else if constexpr (std::is_same_v<T, TraceWitness>) {
          out += " tau=" + format_vector(w.tau);
        } else if constexpr (std::is_same_v<T, SetWitness>) {
          out += " {";
          for (std::size_t i = 0; i < w.vertices.size(); ++i) out += (i ? "," : "") + w.vertices[i];
          out += "}";
        } else if constexpr (std::is_same_v<T, CycleWitness>) {
          out += " cycle";
          for (const auto& e : w.edges) out += " " + e;
        } else if constexpr (std::is_same_v<T, VectorWitness>) {
          out += " m=" + format_vector(w.m);
        }
      },
      status.payload);
  if (!status.evidence.empty() && status.outcome != Outcome::Fails) out += " [" + status.evidence + "]";
  return out;
}

}  // namespace kgsf

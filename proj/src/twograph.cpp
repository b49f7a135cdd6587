#include "kgsf/twograph.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace kgsf {

std::string_view to_string(Color c) noexcept { return c == Color::Blue ? "blue" : "red"; }

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

VertexSet VertexSet::all(std::size_t universe) {
  VertexSet s(universe);
  std::fill(s.bits_.begin(), s.bits_.end(), true);
  return s;
}

VertexSet VertexSet::of(std::size_t universe, const std::vector<std::size_t>& members) {
  VertexSet s(universe);
  for (auto i : members) s.insert(i);
  return s;
}

VertexSet VertexSet::from_mask(std::size_t universe, std::uint64_t mask) {
  VertexSet s(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (mask >> i & 1U) s.bits_[i] = true;
  return s;
}

std::size_t VertexSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<std::size_t> VertexSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

std::uint64_t VertexSet::mask() const {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < bits_.size() && i < 64; ++i)
    if (bits_[i]) m |= std::uint64_t{1} << i;
  return m;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_.at(i)) return false;
  return true;
}

VertexSet VertexSet::united(const VertexSet& other) const {
  VertexSet s = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (other.bits_.at(i)) s.bits_[i] = true;
  return s;
}

VertexSet VertexSet::complement() const {
  VertexSet s = *this;
  s.bits_.flip();
  return s;
}

bool operator<(const VertexSet& a, const VertexSet& b) {
  const auto sa = a.size();
  const auto sb = b.size();
  if (sa != sb) return sa < sb;
  return a.indices() < b.indices();
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

struct EdgeRef {
  Color color;
  std::size_t index;
};

}  // namespace

TwoGraph TwoGraph::validate(TwoGraphDescription desc) {
  TwoGraph g;
  if (desc.vertices.empty()) throw Error(ErrorCode::EmptyGraph, "a 2-graph needs at least one vertex");
  for (std::size_t i = 0; i < desc.vertices.size(); ++i) {
    if (!g.index_.emplace(desc.vertices[i], i).second)
      throw Error(ErrorCode::DuplicateVertex, "vertex '" + desc.vertices[i] + "' declared twice");
  }
  const auto n = static_cast<Eigen::Index>(desc.vertices.size());

  std::unordered_map<std::string, EdgeRef> edge_ids;
  for (Color c : kColors) {
    const auto& records = c == Color::Blue ? desc.blue_edges : desc.red_edges;
    auto& edges = g.edges_[static_cast<int>(c)];
    IntMatrix& a = g.adjacency_[static_cast<int>(c)];
    a = IntMatrix::Zero(n, n);
    for (std::size_t k = 0; k < records.size(); ++k) {
      const auto& e = records[k];
      if (!edge_ids.emplace(e.id, EdgeRef{c, k}).second)
        throw Error(ErrorCode::DuplicateEdgeId, "edge id '" + e.id + "' used more than once");
      auto r = g.index_.find(e.range);
      auto s = g.index_.find(e.source);
      if (r == g.index_.end() || s == g.index_.end())
        throw Error(ErrorCode::DanglingEndpoint,
                    "edge '" + e.id + "' names undeclared vertex '" +
                        (r == g.index_.end() ? e.range : e.source) + "'");
      edges.push_back({static_cast<Eigen::Index>(r->second), static_cast<Eigen::Index>(s->second)});
      a(edges.back().range, edges.back().source) += 1;
    }
  }

  auto lookup = [&](const std::string& id, Color want, std::size_t square) -> std::size_t {
    auto it = edge_ids.find(id);
    if (it == edge_ids.end())
      throw Error(ErrorCode::UnknownEdge, "square #" + std::to_string(square) + " names unknown edge '" + id + "'");
    if (it->second.color != want)
      throw Error(ErrorCode::SquareEndpointMismatch, "square #" + std::to_string(square) + ": edge '" + id +
                                                         "' should be " + std::string(to_string(want)));
    return it->second.index;
  };

  const auto& blue = g.edges_[0];
  const auto& red = g.edges_[1];
  std::set<std::pair<std::size_t, std::size_t>> blue_red_used;
  std::set<std::pair<std::size_t, std::size_t>> red_blue_used;
  for (std::size_t q = 0; q < desc.squares.size(); ++q) {
    const auto& sq = desc.squares[q];
    const auto bi = lookup(sq.blue_in, Color::Blue, q);
    const auto ri = lookup(sq.red_in, Color::Red, q);
    const auto ro = lookup(sq.red_out, Color::Red, q);
    const auto bo = lookup(sq.blue_out, Color::Blue, q);
    const bool ok = blue[bi].source == red[ri].range && red[ro].source == blue[bo].range &&
                    red[ro].range == blue[bi].range && blue[bo].source == red[ri].source;
    if (!ok)
      throw Error(ErrorCode::SquareEndpointMismatch,
                  "square #" + std::to_string(q) + " (" + sq.blue_in + "," + sq.red_in + "," + sq.red_out + "," +
                      sq.blue_out + ") does not close up");
    if (!blue_red_used.emplace(bi, ri).second)
      throw Error(ErrorCode::FactorizationNotBijective,
                  "blue-red path (" + sq.blue_in + "," + sq.red_in + ") factorizes more than once");
    if (!red_blue_used.emplace(ro, bo).second)
      throw Error(ErrorCode::FactorizationNotBijective,
                  "red-blue path (" + sq.red_out + "," + sq.blue_out + ") factorizes more than once");
  }
  // Every composable pair in each direction must be matched.
  for (std::size_t b = 0; b < blue.size(); ++b)
    for (std::size_t r = 0; r < red.size(); ++r) {
      if (blue[b].source == red[r].range && !blue_red_used.count({b, r}))
        throw Error(ErrorCode::FactorizationNotBijective, "blue-red path (" + desc.blue_edges[b].id + "," +
                                                              desc.red_edges[r].id + ") has no factorization");
      if (red[r].source == blue[b].range && !red_blue_used.count({r, b}))
        throw Error(ErrorCode::FactorizationNotBijective, "red-blue path (" + desc.red_edges[r].id + "," +
                                                              desc.blue_edges[b].id + ") has no factorization");
    }

  for (Color c : kColors) {
    const IntMatrix& a = g.adjacency_[static_cast<int>(c)];
    for (Eigen::Index v = 0; v < n; ++v)
      if (is_zero(IntVector(a.row(v).transpose())))
        throw Error(ErrorCode::SourceVertex, "vertex '" + desc.vertices[static_cast<std::size_t>(v)] +
                                                 "' receives no " + std::string(to_string(c)) + " edge");
  }

  if (g.adjacency_[0] * g.adjacency_[1] != g.adjacency_[1] * g.adjacency_[0])
    throw Error(ErrorCode::AdjacencyNoncommuting, "A1*A2 != A2*A1");

  g.desc_ = std::move(desc);
  return g;
}

TwoGraph validate(TwoGraphDescription desc) { return TwoGraph::validate(std::move(desc)); }

std::size_t TwoGraph::vertex_index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw Error(ErrorCode::UnknownVertex, "no vertex named '" + std::string(name) + "'");
  return it->second;
}

const EdgeRecord& TwoGraph::edge_record(Color c, std::size_t i) const {
  return c == Color::Blue ? desc_.blue_edges.at(i) : desc_.red_edges.at(i);
}

VertexSet TwoGraph::vertex_set(const std::vector<std::string>& names) const {
  VertexSet s = no_vertices();
  for (const auto& name : names) s.insert(vertex_index(name));
  return s;
}

std::vector<std::string> TwoGraph::names_of(const VertexSet& s) const {
  std::vector<std::string> out;
  for (auto i : s.indices()) out.push_back(desc_.vertices.at(i));
  return out;
}

std::string TwoGraph::canonical_form() const {
  std::ostringstream os;
  auto vertices = desc_.vertices;
  std::sort(vertices.begin(), vertices.end());
  os << "V";
  for (const auto& v : vertices) os << '|' << v.size() << ':' << v;
  for (Color c : kColors) {
    auto records = c == Color::Blue ? desc_.blue_edges : desc_.red_edges;
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    os << (c == Color::Blue ? "\nB" : "\nR");
    for (const auto& e : records)
      os << '|' << e.id.size() << ':' << e.id << ',' << e.range.size() << ':' << e.range << ','
         << e.source.size() << ':' << e.source;
  }
  auto squares = desc_.squares;
  std::sort(squares.begin(), squares.end(), [](const auto& a, const auto& b) {
    return std::tie(a.blue_in, a.red_in, a.red_out, a.blue_out) <
           std::tie(b.blue_in, b.red_in, b.red_out, b.blue_out);
  });
  os << "\nS";
  for (const auto& s : squares)
    os << '|' << s.blue_in << ',' << s.red_in << ',' << s.red_out << ',' << s.blue_out;
  return os.str();
}

std::string TwoGraph::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_form()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Paths, hereditary and saturated sets
// ---------------------------------------------------------------------------

BigInt count_paths(const TwoGraph& g, std::string_view v, std::string_view w, std::size_t m, std::size_t n) {
  const auto vi = static_cast<Eigen::Index>(g.vertex_index(v));
  const auto wi = static_cast<Eigen::Index>(g.vertex_index(w));
  IntMatrix p = matrix_power(g.adjacency(Color::Blue), m) * matrix_power(g.adjacency(Color::Red), n);
  return p(vi, wi);
}

bool is_hereditary(const TwoGraph& g, const VertexSet& s) {
  for (Color c : kColors)
    for (const auto& e : g.edges(c))
      if (s.contains(static_cast<std::size_t>(e.range)) && !s.contains(static_cast<std::size_t>(e.source)))
        return false;
  return true;
}

namespace {

// True when every color-c edge into v starts in s. Source-freeness guarantees
// at least one such edge exists.
bool all_sources_in(const TwoGraph& g, Color c, std::size_t v, const VertexSet& s) {
  for (const auto& e : g.edges(c))
    if (static_cast<std::size_t>(e.range) == v && !s.contains(static_cast<std::size_t>(e.source))) return false;
  return true;
}

}  // namespace

bool is_saturated(const TwoGraph& g, const VertexSet& s) {
  for (std::size_t v = 0; v < s.universe(); ++v) {
    if (s.contains(v)) continue;
    for (Color c : kColors)
      if (all_sources_in(g, c, v, s)) return false;
  }
  return true;
}

VertexSet hereditary_closure(const TwoGraph& g, const VertexSet& s) {
  VertexSet out = s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Color c : kColors)
      for (const auto& e : g.edges(c)) {
        const auto r = static_cast<std::size_t>(e.range);
        const auto src = static_cast<std::size_t>(e.source);
        if (out.contains(r) && !out.contains(src)) {
          out.insert(src);
          changed = true;
        }
      }
  }
  return out;
}

VertexSet saturate(const TwoGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h)) throw Error(ErrorCode::NotHereditary, "saturation needs a hereditary set");
  VertexSet out = h;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < out.universe(); ++v) {
      if (out.contains(v)) continue;
      for (Color c : kColors) {
        if (all_sources_in(g, c, v, out)) {
          out.insert(v);
          changed = true;
          break;
        }
      }
    }
    if (changed) out = hereditary_closure(g, out);
  }
  return out;
}

namespace {

std::vector<VertexSet> exhaustive_lattice(const TwoGraph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (n > 30) throw Error(ErrorCode::BoxTooLarge, "exhaustive lattice scan limited to 30 vertices");
  // pred[c][v]: mask of sources of color-c edges into v.
  std::vector<std::array<std::uint64_t, 2>> pred(n, {0, 0});
  for (Color c : kColors)
    for (const auto& e : g.edges(c))
      pred[static_cast<std::size_t>(e.range)][static_cast<int>(c)] |= std::uint64_t{1} << e.source;
  std::vector<VertexSet> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < limit; ++s) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      const bool in = s >> v & 1U;
      for (int c = 0; c < 2; ++c) {
        const bool covered = (pred[v][c] & ~s) == 0;
        if (in && !covered) ok = false;   // hereditary
        if (!in && covered) ok = false;   // saturated
      }
    }
    if (ok) out.push_back(VertexSet::from_mask(n, s));
  }
  return out;
}

std::vector<VertexSet> semilattice_closure(const TwoGraph& g) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<VertexSet> generators;
  for (std::size_t v = 0; v < n; ++v) {
    VertexSet seed = g.no_vertices();
    seed.insert(v);
    generators.push_back(saturate(g, hereditary_closure(g, seed)));
  }
  std::set<VertexSet> seen{g.no_vertices()};
  std::vector<VertexSet> frontier{g.no_vertices()};
  while (!frontier.empty()) {
    std::vector<VertexSet> next;
    for (const auto& x : frontier)
      for (const auto& gen : generators) {
        if (gen.is_subset_of(x)) continue;
        VertexSet join = saturate(g, x.united(gen));
        if (seen.insert(join).second) next.push_back(join);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

SatHerLattice sat_her_lattice(const TwoGraph& g, LatticeMode mode) {
  SatHerLattice out;
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (mode == LatticeMode::Auto) mode = n <= kExhaustiveLatticeLimit ? LatticeMode::Exhaustive : LatticeMode::Semilattice;
  out.mode = mode;
  out.sets = mode == LatticeMode::Exhaustive ? exhaustive_lattice(g) : semilattice_closure(g);
  std::sort(out.sets.begin(), out.sets.end());
  return out;
}

bool is_cofinal(const TwoGraph& g, LatticeMode mode) { return sat_her_lattice(g, mode).sets.size() == 2; }

// ---------------------------------------------------------------------------
// Subgraphs
// ---------------------------------------------------------------------------

TwoGraph induced_subgraph(const TwoGraph& g, const VertexSet& s) {
  const auto& full = g.description();
  TwoGraphDescription d;
  for (auto i : s.indices()) d.vertices.push_back(full.vertices[i]);
  std::set<std::string> kept;
  for (Color c : kColors) {
    const auto& edges = g.edges(c);
    auto& out = c == Color::Blue ? d.blue_edges : d.red_edges;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (s.contains(static_cast<std::size_t>(edges[k].range)) && s.contains(static_cast<std::size_t>(edges[k].source))) {
        out.push_back(g.edge_record(c, k));
        kept.insert(out.back().id);
      }
    }
  }
  for (const auto& sq : full.squares)
    if (kept.count(sq.blue_in) && kept.count(sq.red_in) && kept.count(sq.red_out) && kept.count(sq.blue_out))
      d.squares.push_back(sq);
  return TwoGraph::validate(std::move(d));
}

TwoGraph restriction(const TwoGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h)) throw Error(ErrorCode::NotHereditary, describe(g, h) + " is not hereditary");
  if (h.empty()) throw Error(ErrorCode::EmptySet, "restriction to the empty set");
  return induced_subgraph(g, h);
}

TwoGraph quotient(const TwoGraph& g, const VertexSet& h) {
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw Error(ErrorCode::NotSaturatedHereditary, describe(g, h) + " is not saturated hereditary");
  if (h.is_full()) throw Error(ErrorCode::FullSet, "quotient by the full vertex set");
  return induced_subgraph(g, h.complement());
}

std::string describe(const TwoGraph& g, const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.indices()) {
    if (!first) out += ",";
    out += g.vertex_name(i);
    first = false;
  }
  return out + "}";
}

}  // namespace kgsf

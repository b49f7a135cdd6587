#include "kgsf/conditions.hpp"

#include <cmath>

namespace kgsf {

std::string_view to_string(ConditionId id) noexcept {
  switch (id) {
    case ConditionId::M: return "M";
    case ConditionId::N: return "N";
    case ConditionId::Trace: return "Trace";
    case ConditionId::Cofinal: return "Cofinal";
    case ConditionId::CoordAcyclic1: return "CoordAcyclic1";
    case ConditionId::CoordAcyclic2: return "CoordAcyclic2";
    case ConditionId::EqLem1: return "EqLem1";
  }
  return "?";
}

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Holds: return "Holds";
    case Outcome::Fails: return "Fails";
    case Outcome::Assumed: return "Assumed";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

bool same(const IntVector& a, const IntVector& b) { return a.size() == b.size() && (a.size() == 0 || a == b); }
bool same(const RatVector& a, const RatVector& b) { return a.size() == b.size() && (a.size() == 0 || a == b); }

bool same_payload(const Payload& a, const Payload& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, std::monostate>) return true;
        else if constexpr (std::is_same_v<T, MatrixWitness>) return same(x.x, y.x) && same(x.f, y.f) && same(x.g, y.g);
        else if constexpr (std::is_same_v<T, TraceWitness>) return same(x.tau, y.tau);
        else if constexpr (std::is_same_v<T, SetWitness>) return x.vertices == y.vertices;
        else if constexpr (std::is_same_v<T, CycleWitness>) return x.edges == y.edges;
        else return same(x.m, y.m);
      },
      a);
}

ConditionStatus holds(ConditionId id, std::string tag, Payload p = {}) {
  return {id, Outcome::Holds, std::move(tag), std::move(p)};
}

ConditionStatus fails(ConditionId id, std::string why, Payload p) {
  return {id, Outcome::Fails, std::move(why), std::move(p)};
}

}  // namespace

bool operator==(const ConditionStatus& a, const ConditionStatus& b) {
  return a.id == b.id && a.outcome == b.outcome && a.evidence == b.evidence && same_payload(a.payload, b.payload);
}

IntMatrix matrix_condition_block(const TwoGraph& g) {
  const Eigen::Index d = g.num_vertices();
  IntMatrix b(d, 2 * d);
  b << identity_matrix(d) - g.adjacency(Color::Blue).transpose(),
      identity_matrix(d) - g.adjacency(Color::Red).transpose();
  return b;
}

ConditionStatus check_matrix_condition(const TwoGraph& g) {
  const Eigen::Index d = g.num_vertices();
  const auto r = lattice_meets_orthant(matrix_condition_block(g));
  if (!r.found) return holds(ConditionId::M, "exact-lp");
  return fails(ConditionId::M, "nonzero nonnegative vector in the image",
               MatrixWitness{r.x, r.z.head(d), r.z.tail(d)});
}

ConditionStatus check_matrix_condition_1graph(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotSquare, "adjacency matrix must be square");
  const IntMatrix b = identity_matrix(a.rows()) - a.transpose();
  const auto r = lattice_meets_orthant(b);
  if (!r.found) return holds(ConditionId::M, "exact-lp");
  return fails(ConditionId::M, "nonzero nonnegative vector in the image", MatrixWitness{r.x, r.z, IntVector()});
}

bool verify_matrix_witness(const TwoGraph& g, const MatrixWitness& w) {
  const Eigen::Index d = g.num_vertices();
  if (w.x.size() != d || w.f.size() != d || w.g.size() != d) return false;
  bool nonzero = false;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (w.x(i) < 0) return false;
    nonzero = nonzero || w.x(i) != 0;
  }
  IntVector z(2 * d);
  z << w.f, w.g;
  return nonzero && same(IntVector(matrix_condition_block(g) * z), w.x);
}

ConditionStatus check_trace(const TwoGraph& g) {
  auto tau = faithful_graph_trace(g);
  if (tau) return holds(ConditionId::Trace, "exact-lp", TraceWitness{tau->tau});
  // Infeasibility is decided by the same exact LP; there is no vector to show.
  return fails(ConditionId::Trace, "trace equations with tau >= 1 are infeasible", std::monostate{});
}

ConditionStatus check_cofinal(const TwoGraph& g, LatticeMode mode) {
  const auto lattice = sat_her_lattice(g, mode);
  const std::string tag = lattice.mode == LatticeMode::Exhaustive ? "lattice-exhaustive" : "lattice-semilattice";
  for (const auto& s : lattice.sets)
    if (!s.empty() && !s.is_full())
      return fails(ConditionId::Cofinal, "proper nonempty saturated hereditary subset", SetWitness{g.names_of(s)});
  return holds(ConditionId::Cofinal, tag);
}

ConditionStatus check_coordinate_cycles(const TwoGraph& g, Color c) {
  const ConditionId id = c == Color::Blue ? ConditionId::CoordAcyclic1 : ConditionId::CoordAcyclic2;
  const auto n = static_cast<std::size_t>(g.num_vertices());
  const auto& edges = g.edges(c);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t k = 0; k < edges.size(); ++k) out[static_cast<std::size_t>(edges[k].source)].push_back(k);

  enum Mark { White, Gray, Black };
  std::vector<Mark> mark(n, White);
  std::vector<std::size_t> branch;  // vertices on the current DFS branch
  std::vector<std::size_t> path;    // path[i] joins branch[i] to branch[i + 1]
  std::optional<CycleWitness> found;

  std::function<void(std::size_t)> visit = [&](std::size_t u) {
    mark[u] = Gray;
    branch.push_back(u);
    for (std::size_t k : out[u]) {
      if (found) return;
      const auto w = static_cast<std::size_t>(edges[k].range);
      if (mark[w] == Gray) {
        std::size_t j = 0;
        while (branch[j] != w) ++j;
        CycleWitness cycle;
        for (std::size_t i = j; i < path.size(); ++i) cycle.edges.push_back(g.edge_record(c, path[i]).id);
        cycle.edges.push_back(g.edge_record(c, k).id);
        found = std::move(cycle);
        return;
      }
      if (mark[w] == White) {
        path.push_back(k);
        visit(w);
        if (found) return;
        path.pop_back();
      }
    }
    branch.pop_back();
    mark[u] = Black;
  };
  for (std::size_t v = 0; v < n && !found; ++v)
    if (mark[v] == White) visit(v);

  if (found) return fails(id, std::string(to_string(c)) + " cycle", *found);
  return holds(id, "dfs");
}

ConditionStatus condition_n_status(const TwoGraph& g, const std::set<std::string>& assumptions,
                                   const PositivityOracle& oracle) {
  const std::string h = g.hash();
  if (assumptions.count(h)) return {ConditionId::N, Outcome::Assumed, h, {}};
  if (oracle && oracle(g)) return holds(ConditionId::N, "oracle");
  return {ConditionId::N, Outcome::Unknown, "", {}};
}

ConditionStatus check_eq_lem1_bounded(const TwoGraph& g, const VertexSet& h, long radius) {
  const TwoGraph sub = restriction(g, h);
  const auto members = h.indices();
  const auto k = members.size();
  if (radius < 1) throw Error(ErrorCode::BoxTooLarge, "radius must be positive");
  if (static_cast<double>(k) * std::log(static_cast<double>(radius + 1)) > std::log(kMaxOracleBox))
    throw Error(ErrorCode::BoxTooLarge,
                "box [0," + std::to_string(radius) + "]^" + std::to_string(k) + " is too large");

  const Lattice im_h = Lattice::span(matrix_condition_block(sub));
  const Lattice im_g = Lattice::span(matrix_condition_block(g));
  const Eigen::Index d = g.num_vertices();

  std::vector<long> m(k, 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < k && m[pos] == radius) m[pos++] = 0;
    if (pos == k) break;
    ++m[pos];
    IntVector local(static_cast<Eigen::Index>(k));
    IntVector ambient = IntVector::Zero(d);
    for (std::size_t i = 0; i < k; ++i) {
      local(static_cast<Eigen::Index>(i)) = m[i];
      ambient(static_cast<Eigen::Index>(members[i])) = m[i];
    }
    if (!im_h.contains(local).member && im_g.contains(ambient).member)
      return fails(ConditionId::EqLem1, "vector outside im_H whose extension lies in im_Lambda",
                   VectorWitness{local});
  }
  return holds(ConditionId::EqLem1, "bounded:R=" + std::to_string(radius));
}

}  // namespace kgsf

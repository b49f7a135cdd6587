#pragma once

#include "kgsf/error.hpp"
#include "kgsf/numeric.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgsf {

struct EdgeRecord {
  std::string id;
  std::string range;
  std::string source;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Factorization blue_in . red_in = red_out . blue_out (paths compose
/// right to left: s(blue_in) = r(red_in)).
struct SquareRecord {
  std::string blue_in;
  std::string red_in;
  std::string red_out;
  std::string blue_out;

  friend bool operator==(const SquareRecord&, const SquareRecord&) = default;
};

/// Unvalidated finite presentation of a 2-graph: a two-colored skeleton plus
/// the factorization squares.
struct TwoGraphDescription {
  std::vector<std::string> vertices;
  std::vector<EdgeRecord> blue_edges;
  std::vector<EdgeRecord> red_edges;
  std::vector<SquareRecord> squares;

  friend bool operator==(const TwoGraphDescription&, const TwoGraphDescription&) = default;
};

/// Blue edges have degree e_1, red edges degree e_2.
enum class Color { Blue = 0, Red = 1 };

inline constexpr Color kColors[] = {Color::Blue, Color::Red};

std::string_view to_string(Color c) noexcept;

struct Edge {
  Eigen::Index range;
  Eigen::Index source;
};

/// Subset of the vertex indices of some graph.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe, false) {}

  static VertexSet all(std::size_t universe);
  static VertexSet of(std::size_t universe, const std::vector<std::size_t>& members);
  static VertexSet from_mask(std::size_t universe, std::uint64_t mask);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == universe(); }
  bool contains(std::size_t i) const { return bits_.at(i); }
  void insert(std::size_t i) { bits_.at(i) = true; }
  void erase(std::size_t i) { bits_.at(i) = false; }
  std::vector<std::size_t> indices() const;
  std::uint64_t mask() const;

  bool is_subset_of(const VertexSet& other) const;
  VertexSet united(const VertexSet& other) const;
  VertexSet complement() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Size first, then lexicographic on the sorted member indices.
  friend bool operator<(const VertexSet& a, const VertexSet& b);

 private:
  std::vector<bool> bits_;
};

/// A validated finite row-finite source-free 2-graph with its adjacency
/// matrices A_i(v, w) = #{color-i edges with range v and source w}. Vertex
/// order is the input order.
class TwoGraph {
 public:
  static TwoGraph validate(TwoGraphDescription desc);

  const TwoGraphDescription& description() const { return desc_; }
  Eigen::Index num_vertices() const { return static_cast<Eigen::Index>(desc_.vertices.size()); }
  const std::string& vertex_name(std::size_t i) const { return desc_.vertices.at(i); }
  std::size_t vertex_index(std::string_view name) const;
  const IntMatrix& adjacency(Color c) const { return adjacency_[static_cast<int>(c)]; }
  const std::vector<Edge>& edges(Color c) const { return edges_[static_cast<int>(c)]; }
  const EdgeRecord& edge_record(Color c, std::size_t i) const;

  VertexSet no_vertices() const { return VertexSet(desc_.vertices.size()); }
  VertexSet all_vertices() const { return VertexSet::all(desc_.vertices.size()); }
  VertexSet vertex_set(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(const VertexSet& s) const;

  /// Order-independent serialization: vertices, edges and squares sorted.
  std::string canonical_form() const;
  /// 64-bit FNV-1a of canonical_form(), as 16 lowercase hex digits.
  std::string hash() const;

 private:
  TwoGraph() = default;

  TwoGraphDescription desc_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Edge> edges_[2];
  IntMatrix adjacency_[2];
};

TwoGraph validate(TwoGraphDescription desc);

/// (A_1^m A_2^n)(v, w): the number of paths of degree (m, n) from w to v.
BigInt count_paths(const TwoGraph& g, std::string_view v, std::string_view w, std::size_t m,
                   std::size_t n);

bool is_hereditary(const TwoGraph& g, const VertexSet& s);
/// No vertex outside s has all of its color-i predecessors inside s.
bool is_saturated(const TwoGraph& g, const VertexSet& s);

VertexSet hereditary_closure(const TwoGraph& g, const VertexSet& s);

/// Smallest saturated hereditary superset of a hereditary set.
VertexSet saturate(const TwoGraph& g, const VertexSet& h);

enum class LatticeMode { Auto, Exhaustive, Semilattice };

inline constexpr std::size_t kExhaustiveLatticeLimit = 20;

struct SatHerLattice {
  std::vector<VertexSet> sets;
  /// Exhaustive or Semilattice; never Auto.
  LatticeMode mode = LatticeMode::Exhaustive;
};

/// All saturated hereditary subsets, sorted by size then lexicographically.
///
/// Exhaustive mode scans every subset (up to 30 vertices). Semilattice mode
/// closes the saturations of single-vertex hereditary closures under joins.
SatHerLattice sat_her_lattice(const TwoGraph& g, LatticeMode mode = LatticeMode::Auto);

bool is_cofinal(const TwoGraph& g, LatticeMode mode = LatticeMode::Auto);

/// Full subgraph on s: edges with both endpoints in s and the squares whose
/// four edges survive. Throws if the result is not a valid 2-graph.
TwoGraph induced_subgraph(const TwoGraph& g, const VertexSet& s);

/// The sub-2-graph H Lambda of a nonempty hereditary H.
TwoGraph restriction(const TwoGraph& g, const VertexSet& h);

/// The 2-graph Lambda \ Lambda H of a proper saturated hereditary H.
TwoGraph quotient(const TwoGraph& g, const VertexSet& h);

std::string describe(const TwoGraph& g, const VertexSet& s);

}  // namespace kgsf

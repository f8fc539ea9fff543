#pragma once

// Multigraphs with loops and parallel edges, spanning-tree polynomials,
// minors, connections, extensions and the two minor-closed recognizers.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmpoly/exactalg.hpp"
#include "cmpoly/polyseries.hpp"

namespace cmpoly {

struct Edge {
  std::string id;
  std::size_t u = 0;
  std::size_t v = 0;
  bool is_loop() const { return u == v; }
};

/// Labeled multigraph. Edge i carries polynomial variable i.
class Multigraph {
 public:
  Multigraph() = default;

  /// Graph on vertices "0".."n-1" with the given endpoint pairs; edges get
  /// ids "e1", "e2", ...
  static Multigraph from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  static Multigraph cycle(std::size_t n);
  static Multigraph complete(std::size_t n);

  std::size_t add_vertex(std::string label);
  /// Empty id picks the next free "e<k>".
  std::size_t add_edge(std::size_t u, std::size_t v, std::string id = {});

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::string>& vertex_labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  std::optional<std::size_t> find_vertex(std::string_view label) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;
  /// Like find_edge but throws kInvalidArgument for unknown ids.
  std::size_t edge_index(std::string_view id) const;

  /// Component id per vertex (0-based, in order of first vertex).
  std::vector<std::size_t> components() const;
  std::size_t num_components() const;
  bool is_connected() const { return num_components() <= 1; }
  bool is_bridge(std::size_t e) const;
  std::vector<std::size_t> degrees() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

/// Sum over maximal spanning forests of prod x_e, one variable per edge in
/// edge order. Disconnected graphs give the product over components.
MultiPoly spanning_tree_poly(const Multigraph& g);

enum class MinorMode { kDelete, kContract };

/// Deleting or contracting edge e. Remaining edges keep their order; on
/// contraction the endpoint v is merged into u and loops are retained.
Multigraph graph_minor_op(const Multigraph& g, std::size_t e, MinorMode mode);

enum class ConnectMode { kParallel, kSeries, kTwoSum };

struct ConnectResult {
  Multigraph graph;
  /// Index in `graph` of every edge of g1 and g2 (npos when removed). For
  /// parallel and series connections both e1 and e2 map to the shared edge.
  std::vector<std::size_t> map1, map2;
  /// Index of the connection edge e, or npos for a 2-sum.
  std::size_t shared = npos;
  /// Set when e1 or e2 is a bridge of its graph.
  bool bridge_warning = false;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Parallel connection identifies e1 = (x1,y1) with e2 = (x2,y2) (x1~x2,
/// y1~y2). Series connection glues (G1 - e1) and (G2 - e2) at x1 ~ x2 and adds
/// a new edge y1 y2. The 2-sum is the parallel connection minus the shared
/// edge. The shared edge takes the place and id of e1.
ConnectResult connect(const Multigraph& g1, std::size_t e1, const Multigraph& g2, std::size_t e2, ConnectMode mode);

enum class ExtendMode { kParallel, kSeries };

/// Adds a new edge (appended last) parallel to e, or subdivides e with a new
/// vertex so that e and the new edge form a path.
Multigraph extend_edge(const Multigraph& g, std::size_t e, ExtendMode mode);

/// No K4 minor: reducible to the empty graph by deleting loops and
/// vertices of degree <= 1, merging parallel edges and suppressing vertices of
/// degree 2.
bool is_series_parallel(const Multigraph& g);

/// No K3 minor: the underlying simple loopless graph is a forest.
bool has_no_k3_minor(const Multigraph& g);

/// Signed incidence matrix with row `dropped` removed. orientation[e] > 0
/// (default) means e points u -> v: +1 in row u, -1 in row v. Loops give zero
/// columns.
RatMatrix incidence_matrix_reduced(const Multigraph& g, const std::vector<int>& orientation = {},
                                   std::optional<std::size_t> dropped = std::nullopt);

/// {"vertices":[...], "edges":[{"id":..,"u":..,"v":..}, ...]}
Multigraph graph_from_json(std::string_view text);
std::string graph_to_json(const Multigraph& g);

/// Undirected DOT subset: `graph name { a; a -- b; b -- c -- a [id=e7]; }`.
Multigraph graph_from_dot(std::string_view text);

}  // namespace cmpoly

#include "identities.hpp"

#include "corpus.hpp"
#include "cmpoly/matroidlib.hpp"

namespace cmpoly::testing {

MultiPoly embed_minor_poly(const MultiPoly& p, std::size_t e, const std::vector<std::size_t>& map, std::size_t nvars) {
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < map.size(); ++i)
    if (i != e) index.push_back(map[i]);
  return p.remap(nvars, index);
}

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

MultiPoly minor_poly(const Multigraph& g, std::size_t e, MinorMode mode, const std::vector<std::size_t>& map,
                     std::size_t nvars) {
  return embed_minor_poly(spanning_tree_poly(graph_minor_op(g, e, mode)), e, map, nvars);
}

}  // namespace

bool deletion_contraction_holds(const Multigraph& g, std::size_t e) {
  const std::size_t m = g.num_edges();
  const auto id = identity_map(m);
  const MultiPoly t = spanning_tree_poly(g);
  const MultiPoly del = minor_poly(g, e, MinorMode::kDelete, id, m);
  const MultiPoly con = minor_poly(g, e, MinorMode::kContract, id, m);
  const MultiPoly xe = MultiPoly::variable(m, e);
  if (g.edge(e).is_loop()) return t == del;
  if (g.is_bridge(e)) return t == xe * con;
  return t == del + xe * con;
}

namespace {

// T_G = A + x_e B where A counts the trees avoiding e and B those through e
// (without x_e); both are re-embedded through `map`.
std::pair<MultiPoly, MultiPoly> split_at(const Multigraph& g, std::size_t e, const std::vector<std::size_t>& map,
                                         std::size_t nvars) {
  const MultiPoly t = spanning_tree_poly(g);
  return {t.substitute(e, Rat(0)).remap(nvars, map), t.partial_derivative(e).remap(nvars, map)};
}

}  // namespace

bool connection_formula_holds(const Multigraph& g1, std::size_t e1, const Multigraph& g2, std::size_t e2,
                              ConnectMode mode) {
  const ConnectResult res = connect(g1, e1, g2, e2, mode);
  const std::size_t n = res.graph.num_edges();
  std::vector<std::size_t> m1 = res.map1, m2 = res.map2;
  // A and B no longer involve x_e, so the slot e maps to is irrelevant.
  for (auto& v : m1) if (v == ConnectResult::npos) v = 0;
  for (auto& v : m2) if (v == ConnectResult::npos) v = 0;
  const auto [d1, c1] = split_at(g1, e1, m1, n);
  const auto [d2, c2] = split_at(g2, e2, m2, n);
  const MultiPoly t = spanning_tree_poly(res.graph);
  switch (mode) {
    case ConnectMode::kParallel: {
      const MultiPoly xe = MultiPoly::variable(n, res.shared);
      return t == d1 * c2 + c1 * d2 + xe * c1 * c2;
    }
    case ConnectMode::kSeries: {
      const MultiPoly xe = MultiPoly::variable(n, res.shared);
      return t == d1 * d2 + xe * d1 * c2 + xe * c1 * d2;
    }
    case ConnectMode::kTwoSum:
      return t == d1 * c2 + c1 * d2;
  }
  return false;
}

bool extension_law_holds(const Multigraph& g, std::size_t e, ExtendMode mode, std::uint64_t seed) {
  const Multigraph h = extend_edge(g, e, mode);
  const std::size_t f = h.num_edges() - 1;
  const std::vector<Rat> x = random_positive_point(h.num_edges(), seed);
  std::vector<Rat> y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(g.num_edges()));
  const Rat lhs = spanning_tree_poly(h).evaluate(x);
  const MultiPoly t = spanning_tree_poly(g);
  if (mode == ExtendMode::kParallel) {
    y[e] = x[e] + x[f];
    return lhs == t.evaluate(y);
  }
  const Rat s = x[e] + x[f];
  y[e] = x[e] * x[f] / s;
  return lhs == s * t.evaluate(y);
}

bool matrix_tree_agrees(const Multigraph& g, std::uint64_t seed) {
  const std::vector<Rat> x = random_positive_point(g.num_edges(), seed);
  const Rat v = spanning_tree_poly(g).evaluate(x);
  return v == spanning_forest_sum_brute(g, x) && v == matrix_tree_value(g, x);
}

bool cauchy_binet_graph_holds(const Multigraph& g, std::uint64_t seed) {
  if (g.num_vertices() < 2 || !g.is_connected()) return true;
  const RatMatrix b = incidence_matrix_reduced(g);
  const MultiPoly t = spanning_tree_poly(g);
  if (basis_poly(RepMatroid(b)) != t) return false;
  const std::vector<Rat> x = random_positive_point(g.num_edges(), seed);
  RatMatrix bx = b;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) bx(i, j) *= x[j];
  return det_exact(bx * b.transpose()) == t.evaluate(x);
}

bool cauchy_binet_holds(const RepMatroid& m, std::uint64_t seed) {
  const std::vector<Rat> x = random_positive_point(m.size(), seed);
  const Rat value = basis_poly(m).evaluate(x);
  if (const auto* b = std::get_if<RatMatrix>(&m.matrix())) {
    RatMatrix bx = *b;
    for (std::size_t i = 0; i < bx.rows(); ++i)
      for (std::size_t j = 0; j < bx.cols(); ++j) bx(i, j) *= x[j];
    return det_exact(bx * b->transpose()) == value;
  }
  const auto& b = std::get<Cyc6Matrix>(m.matrix());
  Cyc6Matrix bx = b;
  for (std::size_t i = 0; i < bx.rows(); ++i)
    for (std::size_t j = 0; j < bx.cols(); ++j) bx(i, j) *= Cyc6(x[j]);
  return det_exact(bx * adjoint(b)) == Cyc6(value);
}

}  // namespace cmpoly::testing

#include "cmpoly/graphlib.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "json_util.hpp"

namespace cmpoly {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

// ------------------------------------------------------------- Multigraph

Multigraph Multigraph::from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Multigraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(std::to_string(i));
  for (const auto& [u, v] : pairs) g.add_edge(u, v);
  return g;
}

Multigraph Multigraph::cycle(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "cycle needs at least one vertex");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (n == 1) {
    pairs.push_back({0, 0});
  } else if (n == 2) {
    pairs = {{0, 1}, {0, 1}};
  } else {
    for (std::size_t i = 0; i < n; ++i) pairs.push_back({i, (i + 1) % n});
  }
  return from_pairs(n, pairs);
}

Multigraph Multigraph::complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  return from_pairs(n, pairs);
}

std::size_t Multigraph::add_vertex(std::string label) {
  if (find_vertex(label)) throw Error(ErrorCode::kInvalidArgument, "duplicate vertex label '" + label + "'");
  labels_.push_back(std::move(label));
  return labels_.size() - 1;
}

std::size_t Multigraph::add_edge(std::size_t u, std::size_t v, std::string id) {
  if (u >= labels_.size() || v >= labels_.size()) throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
  if (id.empty()) {
    std::size_t k = edges_.size() + 1;
    while (find_edge("e" + std::to_string(k))) ++k;
    id = "e" + std::to_string(k);
  } else if (find_edge(id)) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate edge id '" + id + "'");
  }
  edges_.push_back({std::move(id), u, v});
  return edges_.size() - 1;
}

std::optional<std::size_t> Multigraph::find_vertex(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> Multigraph::find_edge(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  return std::nullopt;
}

std::size_t Multigraph::edge_index(std::string_view id) const {
  auto e = find_edge(id);
  if (!e) throw Error(ErrorCode::kInvalidArgument, "unknown edge id '" + std::string(id) + "'");
  return *e;
}

std::vector<std::size_t> Multigraph::components() const {
  UnionFind uf(labels_.size());
  for (const auto& e : edges_) uf.unite(e.u, e.v);
  std::vector<std::size_t> comp(labels_.size());
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, _] = ids.try_emplace(uf.find(i), ids.size());
    comp[i] = it->second;
  }
  return comp;
}

std::size_t Multigraph::num_components() const {
  const auto c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

bool Multigraph::is_bridge(std::size_t e) const {
  const Edge& ed = edges_.at(e);
  if (ed.is_loop()) return false;
  UnionFind uf(labels_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (i != e) uf.unite(edges_[i].u, edges_[i].v);
  return uf.find(ed.u) != uf.find(ed.v);
}

std::vector<std::size_t> Multigraph::degrees() const {
  std::vector<std::size_t> d(labels_.size(), 0);
  for (const auto& e : edges_) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

// ------------------------------------------------------- spanning trees

namespace {

struct TEdge {
  std::uint32_t var, u, v;
};

class TreePolyBuilder {
 public:
  explicit TreePolyBuilder(std::size_t nvars) : nvars_(nvars) {}

  MultiPoly run(std::vector<TEdge> es) {
    es.erase(std::remove_if(es.begin(), es.end(), [](const TEdge& e) { return e.u == e.v; }), es.end());
    if (es.empty()) return MultiPoly::constant(nvars_, Rat(1));
    for (auto& e : es)
      if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(es.begin(), es.end(), [](const TEdge& a, const TEdge& b) { return a.var < b.var; });
    std::string key;
    key.reserve(es.size() * 12);
    for (const auto& e : es) {
      key.append(reinterpret_cast<const char*>(&e.var), sizeof e.var);
      key.append(reinterpret_cast<const char*>(&e.u), sizeof e.u);
      key.append(reinterpret_cast<const char*>(&e.v), sizeof e.v);
    }
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    MultiPoly result = compute(es);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  MultiPoly compute(const std::vector<TEdge>& es) {
    // split into components
    std::map<std::uint32_t, std::uint32_t> parent;
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      auto it = parent.find(x);
      if (it == parent.end()) {
        parent[x] = x;
        return x;
      }
      if (it->second == x) return x;
      const std::uint32_t r = find(it->second);
      parent[x] = r;
      return r;
    };
    for (const auto& e : es) {
      const auto a = find(e.u), b = find(e.v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::uint32_t, std::vector<TEdge>> comps;
    for (const auto& e : es) comps[find(e.u)].push_back(e);
    if (comps.size() > 1) {
      MultiPoly prod = MultiPoly::constant(nvars_, Rat(1));
      for (auto& [r, part] : comps) prod = prod * run(std::move(part));
      return prod;
    }

    const TEdge pivot = es.front();
    std::vector<TEdge> deleted(es.begin() + 1, es.end());
    std::vector<TEdge> contracted = deleted;
    const std::uint32_t keep = std::min(pivot.u, pivot.v), gone = std::max(pivot.u, pivot.v);
    for (auto& e : contracted) {
      if (e.u == gone) e.u = keep;
      if (e.v == gone) e.v = keep;
    }
    MultiPoly with_edge = times_var(run(std::move(contracted)), pivot.var);
    if (is_bridge(pivot, deleted)) return with_edge;
    return run(std::move(deleted)) + with_edge;
  }

  static bool is_bridge(const TEdge& pivot, const std::vector<TEdge>& rest) {
    std::set<std::uint32_t> seen{pivot.u};
    std::vector<std::uint32_t> stack{pivot.u};
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (const auto& e : rest) {
        std::uint32_t y;
        if (e.u == x) y = e.v;
        else if (e.v == x) y = e.u;
        else continue;
        if (y == pivot.v) return false;
        if (seen.insert(y).second) stack.push_back(y);
      }
    }
    return true;
  }

  MultiPoly times_var(const MultiPoly& p, std::uint32_t var) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : p.terms()) {
      Exponent f = e;
      ++f[var];
      out.add_term(f, c);
    }
    return out;
  }

  std::size_t nvars_;
  std::unordered_map<std::string, MultiPoly> memo_;
};

}  // namespace

MultiPoly spanning_tree_poly(const Multigraph& g) {
  std::vector<TEdge> es;
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    es.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(g.edge(i).u),
                  static_cast<std::uint32_t>(g.edge(i).v)});
  TreePolyBuilder b(g.num_edges());
  return b.run(std::move(es));
}

// ----------------------------------------------------------------- minors

Multigraph graph_minor_op(const Multigraph& g, std::size_t e, MinorMode mode) {
  if (e >= g.num_edges()) throw Error(ErrorCode::kInvalidArgument, "unknown edge");
  const Edge& target = g.edge(e);
  const bool merge = mode == MinorMode::kContract && !target.is_loop();
  Multigraph out;
  std::vector<std::size_t> vmap(g.num_vertices());
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    if (merge && i == target.v) continue;
    vmap[i] = out.add_vertex(g.vertex_labels()[i]);
  }
  if (merge) vmap[target.v] = vmap[target.u];
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (i == e) continue;
    out.add_edge(vmap[g.edge(i).u], vmap[g.edge(i).v], g.edge(i).id);
  }
  return out;
}

// ------------------------------------------------------------ connections

namespace {

std::string fresh_label(const Multigraph& g, const std::string& base) {
  if (!g.find_vertex(base)) return base;
  for (std::size_t k = 2;; ++k) {
    std::string s = base + "#" + std::to_string(k);
    if (!g.find_vertex(s)) return s;
  }
}

std::string fresh_edge_id(const Multigraph& g, const std::string& base) {
  if (!g.find_edge(base)) return base;
  for (std::size_t k = 2;; ++k) {
    std::string s = base + "#" + std::to_string(k);
    if (!g.find_edge(s)) return s;
  }
}

}  // namespace

ConnectResult connect(const Multigraph& g1, std::size_t e1, const Multigraph& g2, std::size_t e2, ConnectMode mode) {
  if (e1 >= g1.num_edges() || e2 >= g2.num_edges()) throw Error(ErrorCode::kInvalidArgument, "unknown edge");
  const Edge a = g1.edge(e1), b = g2.edge(e2);
  if (a.is_loop() || b.is_loop()) throw Error(ErrorCode::kInvalidArgument, "a loop cannot be a connection edge");

  ConnectResult res;
  res.bridge_warning = g1.is_bridge(e1) || g2.is_bridge(e2);
  Multigraph& out = res.graph;
  for (const auto& l : g1.vertex_labels()) out.add_vertex(l);

  // G2 vertices: x2 ~ x1 always; y2 ~ y1 unless series
  std::vector<std::size_t> vmap2(g2.num_vertices());
  for (std::size_t i = 0; i < g2.num_vertices(); ++i) {
    if (i == b.u) vmap2[i] = a.u;
    else if (i == b.v && mode != ConnectMode::kSeries) vmap2[i] = a.v;
    else vmap2[i] = out.add_vertex(fresh_label(out, g2.vertex_labels()[i]));
  }

  res.map1.assign(g1.num_edges(), ConnectResult::npos);
  res.map2.assign(g2.num_edges(), ConnectResult::npos);
  for (std::size_t i = 0; i < g1.num_edges(); ++i) {
    const Edge& ed = g1.edge(i);
    if (i == e1) {
      if (mode == ConnectMode::kTwoSum) continue;
      // parallel keeps (x1, y1); series adds the new edge y1 y2
      const bool series = mode == ConnectMode::kSeries;
      res.shared = out.add_edge(series ? a.v : a.u, series ? vmap2[b.v] : a.v, ed.id);
      res.map1[i] = res.shared;
      continue;
    }
    res.map1[i] = out.add_edge(ed.u, ed.v, ed.id);
  }
  if (res.shared != ConnectResult::npos) res.map2[e2] = res.shared;
  for (std::size_t i = 0; i < g2.num_edges(); ++i) {
    if (i == e2) continue;
    const Edge& ed = g2.edge(i);
    res.map2[i] = out.add_edge(vmap2[ed.u], vmap2[ed.v], fresh_edge_id(out, ed.id));
  }
  return res;
}

Multigraph extend_edge(const Multigraph& g, std::size_t e, ExtendMode mode) {
  if (e >= g.num_edges()) throw Error(ErrorCode::kInvalidArgument, "unknown edge");
  const Edge target = g.edge(e);
  if (mode == ExtendMode::kParallel) {
    Multigraph out = g;
    out.add_edge(target.u, target.v, fresh_edge_id(g, target.id + "'"));
    return out;
  }
  if (target.is_loop()) throw Error(ErrorCode::kInvalidArgument, "series extension of a loop");
  Multigraph out;
  for (const auto& l : g.vertex_labels()) out.add_vertex(l);
  const std::size_t w = out.add_vertex(fresh_label(g, "s" + std::to_string(g.num_vertices())));
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& ed = g.edge(i);
    if (i == e) out.add_edge(ed.u, w, ed.id);
    else out.add_edge(ed.u, ed.v, ed.id);
  }
  out.add_edge(w, target.v, fresh_edge_id(g, target.id + "'"));
  return out;
}

// ------------------------------------------------------------ recognizers

bool is_series_parallel(const Multigraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> es;
  for (const auto& e : g.edges())
    if (!e.is_loop()) es.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  bool changed = true;
  while (changed && !es.empty()) {
    changed = false;
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (const auto& [u, v] : es) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (const auto& [x, nb] : adj) {
      if (nb.size() == 1) {
        es.erase({std::min(x, nb[0]), std::max(x, nb[0])});
        changed = true;
        break;
      }
      if (nb.size() == 2) {
        es.erase({std::min(x, nb[0]), std::max(x, nb[0])});
        es.erase({std::min(x, nb[1]), std::max(x, nb[1])});
        es.insert({std::min(nb[0], nb[1]), std::max(nb[0], nb[1])});
        changed = true;
        break;
      }
    }
  }
  return es.empty();
}

bool has_no_k3_minor(const Multigraph& g) {
  std::set<std::pair<std::size_t, std::size_t>> es;
  for (const auto& e : g.edges())
    if (!e.is_loop()) es.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  UnionFind uf(g.num_vertices());
  for (const auto& [u, v] : es)
    if (!uf.unite(u, v)) return false;
  return true;
}

RatMatrix incidence_matrix_reduced(const Multigraph& g, const std::vector<int>& orientation,
                                   std::optional<std::size_t> dropped) {
  const std::size_t n = g.num_vertices(), m = g.num_edges();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "graph has no vertices");
  if (!g.is_connected()) throw Error(ErrorCode::kDomain, "incidence matrix needs a connected graph");
  if (!orientation.empty() && orientation.size() != m)
    throw Error(ErrorCode::kInvalidArgument, "orientation has wrong length");
  const std::size_t drop = dropped.value_or(n - 1);
  if (drop >= n) throw Error(ErrorCode::kInvalidArgument, "dropped vertex out of range");
  RatMatrix b(n - 1, m);
  auto row = [&](std::size_t v) { return v < drop ? v : v - 1; };
  for (std::size_t j = 0; j < m; ++j) {
    const Edge& e = g.edge(j);
    if (e.is_loop()) continue;
    const bool fwd = orientation.empty() || orientation[j] > 0;
    const std::size_t tail = fwd ? e.u : e.v, head = fwd ? e.v : e.u;
    if (tail != drop) b(row(tail), j) = Rat(1);
    if (head != drop) b(row(head), j) = Rat(-1);
  }
  return b;
}

// --------------------------------------------------------------------- IO

Multigraph graph_from_json(std::string_view text) {
  using detail::json;
  const json j = detail::parse_json(text);
  if (!j.is_object() || !j.contains("edges")) throw Error(ErrorCode::kParse, "graph JSON needs \"edges\"");
  Multigraph g;
  auto label_of = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw Error(ErrorCode::kParse, "vertex labels must be strings or integers");
  };
  if (j.contains("vertices")) {
    for (const auto& v : j.at("vertices")) g.add_vertex(label_of(v));
  }
  for (const auto& e : j.at("edges")) {
    if (!e.contains("u") || !e.contains("v")) throw Error(ErrorCode::kParse, "edge needs \"u\" and \"v\"");
    const std::string u = label_of(e.at("u")), v = label_of(e.at("v"));
    if (!j.contains("vertices")) {
      if (!g.find_vertex(u)) g.add_vertex(u);
      if (!g.find_vertex(v)) g.add_vertex(v);
    }
    const auto iu = g.find_vertex(u), iv = g.find_vertex(v);
    if (!iu || !iv) throw Error(ErrorCode::kParse, "edge endpoint is not a listed vertex");
    g.add_edge(*iu, *iv, e.contains("id") ? label_of(e.at("id")) : std::string{});
  }
  return g;
}

std::string graph_to_json(const Multigraph& g) {
  using detail::json;
  json j;
  j["vertices"] = g.vertex_labels();
  j["edges"] = json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"id", e.id}, {"u", g.vertex_labels()[e.u]}, {"v", g.vertex_labels()[e.v]}});
  return j.dump();
}

namespace {

class DotLexer {
 public:
  explicit DotLexer(std::string_view s) : s_(s) {}

  // Returns "" at end. Punctuation tokens: { } [ ] ; , = --
  std::string next() {
    skip();
    if (pos_ >= s_.size()) return {};
    const char c = s_[pos_];
    if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '-') {
      pos_ += 2;
      return "--";
    }
    if (c == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>')
      throw Error(ErrorCode::kParse, "directed edges are not supported");
    if (std::string_view("{}[];,=").find(c) != std::string_view::npos) {
      ++pos_;
      return std::string(1, c);
    }
    if (c == '"') {
      std::string out = "\"";
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
        out += s_[pos_++];
      }
      if (pos_ >= s_.size()) throw Error(ErrorCode::kParse, "unterminated string in DOT input");
      ++pos_;
      return out;
    }
    std::string out;
    while (pos_ < s_.size()) {
      const char d = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.' ||
          (d == '-' && !(pos_ + 1 < s_.size() && (s_[pos_ + 1] == '-' || s_[pos_ + 1] == '>')))) {
        out += d;
        ++pos_;
      } else {
        break;
      }
    }
    if (out.empty()) throw Error(ErrorCode::kParse, std::string("unexpected character '") + c + "' in DOT input");
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_.substr(pos_, 2) == "//" || s_[pos_] == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (s_.substr(pos_, 2) == "/*") {
        const auto end = s_.find("*/", pos_ + 2);
        pos_ = end == std::string_view::npos ? s_.size() : end + 2;
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string unquote(const std::string& t) { return !t.empty() && t[0] == '"' ? t.substr(1) : t; }

}  // namespace

Multigraph graph_from_dot(std::string_view text) {
  DotLexer lx(text);
  std::string t = lx.next();
  if (t == "strict") t = lx.next();
  if (t == "digraph") throw Error(ErrorCode::kParse, "directed graphs are not supported");
  if (t != "graph") throw Error(ErrorCode::kParse, "DOT input must start with 'graph'");
  t = lx.next();
  if (t != "{") t = lx.next();
  if (t != "{") throw Error(ErrorCode::kParse, "expected '{' in DOT input");

  Multigraph g;
  auto vertex = [&](const std::string& label) {
    auto v = g.find_vertex(label);
    return v ? *v : g.add_vertex(label);
  };
  auto read_attrs = [&](std::map<std::string, std::string>& attrs) {
    std::string k = lx.next();
    while (k != "]") {
      if (k.empty()) throw Error(ErrorCode::kParse, "unterminated attribute list");
      if (k == "," || k == ";") {
        k = lx.next();
        continue;
      }
      std::string eq = lx.next();
      if (eq != "=") throw Error(ErrorCode::kParse, "expected '=' in attribute list");
      attrs[unquote(k)] = unquote(lx.next());
      k = lx.next();
    }
  };

  t = lx.next();
  while (t != "}") {
    if (t.empty()) throw Error(ErrorCode::kParse, "missing '}' in DOT input");
    if (t == ";" || t == ",") {
      t = lx.next();
      continue;
    }
    if (t == "graph" || t == "node" || t == "edge") {
      std::string n = lx.next();
      if (n == "[") {
        std::map<std::string, std::string> ignored;
        read_attrs(ignored);
        t = lx.next();
        continue;
      }
      throw Error(ErrorCode::kParse, "keyword '" + t + "' used as a node name");
    }
    std::vector<std::string> chain{unquote(t)};
    std::map<std::string, std::string> attrs;
    t = lx.next();
    if (t == "=") {  // top-level graph attribute
      lx.next();
      t = lx.next();
      continue;
    }
    while (t == "--") {
      chain.push_back(unquote(lx.next()));
      t = lx.next();
    }
    if (t == "[") {
      read_attrs(attrs);
      t = lx.next();
    }
    if (chain.size() == 1) {
      vertex(chain[0]);
      continue;
    }
    std::string id;
    if (auto it = attrs.find("id"); it != attrs.end()) id = it->second;
    else if (auto it2 = attrs.find("label"); it2 != attrs.end()) id = it2->second;
    if (!id.empty() && chain.size() > 2) throw Error(ErrorCode::kParse, "edge id given for an edge chain");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const std::size_t a = vertex(chain[i]), b = vertex(chain[i + 1]);
      g.add_edge(a, b, id);
    }
  }
  return g;
}

}  // namespace cmpoly

#include "lensclass/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace lensclass {

std::string to_string(const VertexId& v) {
  return "v" + std::to_string(v.level) + "_" + std::to_string(v.offset);
}

MultiGraph::MultiGraph(const std::vector<VertexId>& vertices) {
  for (const auto& v : vertices) add_vertex(v);
}

int MultiGraph::add_vertex(const VertexId& v) {
  if (index_.count(v)) throw Error(ErrorCode::InvalidParams, "duplicate vertex " + to_string(v));
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back(v);
  index_.emplace(v, id);
  return id;
}

void MultiGraph::add_edge(const VertexId& source, const VertexId& target, long count) {
  auto s = index_of(source), t = index_of(target);
  if (!s || !t) throw Error(ErrorCode::InvalidParams, "edge endpoint is not a vertex");
  for (long c = 0; c < count; ++c) edges_.push_back({*s, *t});
}

std::optional<int> MultiGraph::index_of(const VertexId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<int>> MultiGraph::successor_lists() const {
  std::vector<std::vector<int>> out(vertices_.size());
  for (const auto& e : edges_) out[e.source].push_back(e.target);
  return out;
}

std::vector<long> MultiGraph::out_degrees() const {
  std::vector<long> deg(vertices_.size(), 0);
  for (const auto& e : edges_) ++deg[e.source];
  return deg;
}

Poset::Poset(int n) : n_(n), rel_(n, n) {
  rel_.setConstant(false);
  for (int i = 0; i < n; ++i) rel_(i, i) = true;
}

Poset Poset::from_relations(int n, const std::vector<std::pair<int, int>>& less_eq) {
  Poset p(n);
  for (auto [i, j] : less_eq) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::BadCase, "relation out of range");
    p.rel_(i, j) = true;
  }
  p.close();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (p.rel_(i, j)) throw Error(ErrorCode::BadCase, "order must refine the integer order");
  return p;
}

Poset Poset::linear(int n) {
  Poset p(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) p.rel_(i, j) = true;
  return p;
}

void Poset::close() {
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      if (rel_(i, k))
        for (int j = 0; j < n_; ++j)
          if (rel_(k, j)) rel_(i, j) = true;
}

bool Poset::is_linear() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (!comparable(i, j)) return false;
  return true;
}

bool Poset::operator==(const Poset& other) const {
  return n_ == other.n_ && rel_ == other.rel_;
}

IntMatrix adjacency_matrix(const MultiGraph& g, const std::vector<VertexId>& vertex_order) {
  const Index n = static_cast<Index>(vertex_order.size());
  if (vertex_order.size() != g.size()) throw Error(ErrorCode::OrderMismatch, "vertex_order has wrong length");
  std::vector<Index> position(g.size(), -1);
  for (Index i = 0; i < n; ++i) {
    auto id = g.index_of(vertex_order[i]);
    if (!id || position[*id] != -1) throw Error(ErrorCode::OrderMismatch, "vertex_order is not a permutation");
    position[*id] = i;
  }
  IntMatrix a = IntMatrix::Zero(n, n);
  for (const auto& e : g.edges()) a(position[e.source], position[e.target]) += 1;
  return a;
}

namespace {

std::vector<std::vector<int>> tarjan(const std::vector<std::vector<int>>& graph) {
  const int node_count = static_cast<int>(graph.size());
  std::vector<int> dfs_numbers(node_count, -1), dfs_minima(node_count, -1), stack_indices(node_count, -1);
  std::vector<int> stack;
  std::vector<std::vector<int>> sccs;
  int current_dfs_number = 0;

  std::function<void(int)> dfs = [&](int vertex) {
    int vertex_dfs_number = current_dfs_number++;
    dfs_numbers[vertex] = dfs_minima[vertex] = vertex_dfs_number;
    stack_indices[vertex] = static_cast<int>(stack.size());
    stack.push_back(vertex);
    for (int succ : graph[vertex]) {
      int succ_dfs_number = dfs_numbers[succ];
      if (succ_dfs_number == -1) {
        dfs(succ);
        dfs_minima[vertex] = std::min(dfs_minima[vertex], dfs_minima[succ]);
      } else if (succ_dfs_number < vertex_dfs_number && stack_indices[succ] != -1) {
        dfs_minima[vertex] = std::min(dfs_minima[vertex], succ_dfs_number);
      }
    }
    if (dfs_minima[vertex] == vertex_dfs_number) {
      int stack_index = stack_indices[vertex];
      std::vector<int> comp(stack.begin() + stack_index, stack.end());
      for (int v : comp) stack_indices[v] = -1;
      stack.resize(stack_index);
      sccs.push_back(std::move(comp));
    }
  };
  for (int i = 0; i < node_count; ++i)
    if (dfs_numbers[i] == -1) dfs(i);
  return sccs;
}

struct Condensation {
  std::vector<VertexSet> components;  // sorted by least vertex id
  std::vector<int> component_of;      // vertex index -> component
  std::vector<std::set<int>> dag;     // component successor sets (no self loops)
};

Condensation condense(const MultiGraph& g) {
  Condensation c;
  auto raw = tarjan(g.successor_lists());
  for (const auto& comp : raw) {
    VertexSet s;
    for (int v : comp) s.insert(g.vertices()[v]);
    c.components.push_back(std::move(s));
  }
  std::sort(c.components.begin(), c.components.end(),
            [](const VertexSet& a, const VertexSet& b) { return *a.begin() < *b.begin(); });
  c.component_of.assign(g.size(), -1);
  for (int k = 0; k < static_cast<int>(c.components.size()); ++k)
    for (const auto& v : c.components[k]) c.component_of[*g.index_of(v)] = k;
  c.dag.resize(c.components.size());
  for (const auto& e : g.edges()) {
    int a = c.component_of[e.source], b = c.component_of[e.target];
    if (a != b) c.dag[a].insert(b);
  }
  return c;
}

}  // namespace

std::vector<VertexSet> scc(const MultiGraph& g) { return condense(g).components; }

GammaSet gamma_set(const MultiGraph& g) {
  const Condensation c = condense(g);
  const int m = static_cast<int>(c.components.size());
  const auto deg = g.out_degrees();

  std::vector<int> internal_edges(m, 0);
  for (const auto& e : g.edges())
    if (c.component_of[e.source] == c.component_of[e.target]) ++internal_edges[c.component_of[e.source]];

  std::vector<bool> keep(m, false);
  for (int k = 0; k < m; ++k) {
    if (internal_edges[k] > 0) {
      keep[k] = true;  // carries a cycle
    } else {
      int v = *g.index_of(*c.components[k].begin());
      keep[k] = deg[v] == 0;  // singular, cycle-free
    }
  }

  // topological order of the condensation, ties broken by least vertex id
  std::vector<int> indegree(m, 0);
  for (int k = 0; k < m; ++k)
    for (int s : c.dag[k]) ++indegree[s];
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int k = 0; k < m; ++k)
    if (indegree[k] == 0) ready.push(k);
  std::vector<int> topo;
  while (!ready.empty()) {
    int k = ready.top();
    ready.pop();
    topo.push_back(k);
    for (int s : c.dag[k])
      if (--indegree[s] == 0) ready.push(s);
  }

  // reachability over the whole condensation, restricted afterwards
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    int k = *it;
    reach[k][k] = true;
    for (int s : c.dag[k])
      for (int t = 0; t < m; ++t)
        if (reach[s][t]) reach[k][t] = true;
  }

  GammaSet out;
  std::vector<int> chosen;
  for (int k : topo)
    if (keep[k]) chosen.push_back(k);
  const int n = static_cast<int>(chosen.size());
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i) {
    out.components.push_back(c.components[chosen[i]]);
    for (int j = 0; j < n; ++j)
      if (i != j && reach[chosen[i]][chosen[j]]) rel.emplace_back(i, j);
  }
  out.order = Poset::from_relations(n, rel);
  return out;
}

VertexSet hereditary_closure(const MultiGraph& g, const VertexSet& seed) {
  const auto succ = g.successor_lists();
  std::vector<bool> seen(g.size(), false);
  std::vector<int> stack;
  for (const auto& v : seed) {
    auto id = g.index_of(v);
    if (!id) throw Error(ErrorCode::InvalidParams, "seed vertex not in graph");
    if (!seen[*id]) {
      seen[*id] = true;
      stack.push_back(*id);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : succ[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  VertexSet out;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (seen[i]) out.insert(g.vertices()[i]);
  return out;
}

bool unique_return_paths(const MultiGraph& g) {
  const Condensation c = condense(g);
  std::vector<long> internal_edges(c.components.size(), 0);
  for (const auto& e : g.edges())
    if (c.component_of[e.source] == c.component_of[e.target]) ++internal_edges[c.component_of[e.source]];
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    const long size = static_cast<long>(c.components[k].size());
    if (internal_edges[k] > 0 && internal_edges[k] != size) return false;
  }
  return true;
}

Poset reachability_poset(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, "square matrix expected");
  const int n = static_cast<int>(a.rows());
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a(i, j) != 0) rel.emplace_back(i, j);
  return Poset::from_relations(n, rel);
}

MultiGraph graph_from_matrix(const IntMatrix& a, const std::vector<VertexId>& vertex_order) {
  if (a.rows() != a.cols() || a.rows() != static_cast<Index>(vertex_order.size()))
    throw Error(ErrorCode::ShapeMismatch, "matrix and vertex order disagree");
  MultiGraph g(vertex_order);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < 0) throw Error(ErrorCode::InvalidParams, "negative edge count");
      g.add_edge(vertex_order[i], vertex_order[j], static_cast<long>(a(i, j)));
    }
  return g;
}

std::string to_dot(const MultiGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  std::vector<int> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return g.vertices()[a] < g.vertices()[b]; });
  for (int i : order) out << "  " << to_string(g.vertices()[i]) << ";\n";
  auto edges = g.edges();
  std::stable_sort(edges.begin(), edges.end(), [&](const MultiGraph::Edge& a, const MultiGraph::Edge& b) {
    const auto& vs = g.vertices();
    return std::tie(vs[a.source], vs[a.target]) < std::tie(vs[b.source], vs[b.target]);
  });
  for (const auto& e : edges)
    out << "  " << to_string(g.vertices()[e.source]) << " -> " << to_string(g.vertices()[e.target]) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace lensclass

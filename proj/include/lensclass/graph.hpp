#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lensclass/types.hpp"

namespace lensclass {

// Vertices are (level, offset) pairs; ordering is level-major.
struct VertexId {
  int level = 0;
  long offset = 0;
  auto operator<=>(const VertexId&) const = default;
};

std::string to_string(const VertexId& v);  // "v{level}_{offset}"

using VertexSet = std::set<VertexId>;

class MultiGraph {
 public:
  struct Edge {
    int source;
    int target;
  };

  MultiGraph() = default;
  explicit MultiGraph(const std::vector<VertexId>& vertices);

  int add_vertex(const VertexId& v);
  void add_edge(const VertexId& source, const VertexId& target, long count = 1);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return vertices_.size(); }
  std::optional<int> index_of(const VertexId& v) const;
  bool contains(const VertexId& v) const { return index_.count(v) > 0; }

  // successor indices, one entry per parallel edge, in insertion order
  std::vector<std::vector<int>> successor_lists() const;
  std::vector<long> out_degrees() const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, int> index_;
};

// Finite partial order on {0..N-1}. Stored as its reflexive-transitive
// closure; i <= j in the order always implies i <= j as integers.
class Poset {
 public:
  Poset() = default;
  explicit Poset(int n);  // discrete order
  static Poset from_relations(int n, const std::vector<std::pair<int, int>>& less_eq);
  static Poset linear(int n);

  int size() const { return n_; }
  bool leq(int i, int j) const { return rel_(i, j); }
  bool comparable(int i, int j) const { return leq(i, j) || leq(j, i); }
  bool is_linear() const;
  const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& relation() const { return rel_; }

  bool operator==(const Poset& other) const;

 private:
  void close();

  int n_ = 0;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> rel_;
};

struct GammaSet {
  std::vector<VertexSet> components;
  // i <= j  iff  component i has a path to component j (so gamma_i >= gamma_j)
  Poset order;
};

IntMatrix adjacency_matrix(const MultiGraph& g, const std::vector<VertexId>& vertex_order);

// Tarjan; components sorted by least contained vertex id.
std::vector<VertexSet> scc(const MultiGraph& g);

GammaSet gamma_set(const MultiGraph& g);

VertexSet hereditary_closure(const MultiGraph& g, const VertexSet& seed);

// Type-I condition: every vertex lies on at most one return path. Holds iff
// every nontrivial strongly connected component is a simple cycle.
bool unique_return_paths(const MultiGraph& g);

// Reachability preorder closure of a square nonnegative matrix's support.
Poset reachability_poset(const IntMatrix& a);

MultiGraph graph_from_matrix(const IntMatrix& a, const std::vector<VertexId>& vertex_order);

std::string to_dot(const MultiGraph& g, const std::string& name = "G");

}  // namespace lensclass

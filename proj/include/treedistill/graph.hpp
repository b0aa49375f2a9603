#pragma once

// In-memory model for labeled, node-annotated undirected simple graphs and
// the dataset-level feature dictionary used to intern node feature vectors.

#include <algorithm>
#include <cstring>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treedistill/common.hpp"

namespace treedistill {

struct Graph {
  int id = 0;
  int label = 0;
  int num_nodes = 0;
  int feature_dim = 0;
  std::vector<double> features;             // num_nodes x feature_dim, row-major
  std::vector<std::pair<int, int>> edges;   // normalized u < v, sorted
  std::vector<std::vector<int>> adjacency;  // sorted ascending, symmetric

  int degree(int v) const { return static_cast<int>(adjacency[v].size()); }
  const double* feature_row(int v) const {
    return features.data() + static_cast<std::size_t>(v) * feature_dim;
  }
};

// Validates and derives adjacency. `features` must hold num_nodes * feature_dim
// values; edges are given as arbitrary-order endpoint pairs.
inline Graph make_graph(int id, int label, int num_nodes, int feature_dim,
                        std::vector<double> features,
                        const std::vector<std::pair<int, int>>& edges) {
  if (num_nodes <= 0) throw SchemaError("graph " + std::to_string(id) + ": empty node set");
  if (feature_dim < 0) throw SchemaError("graph " + std::to_string(id) + ": negative feature dim");
  if (features.size() != static_cast<std::size_t>(num_nodes) * feature_dim) {
    throw SchemaError("graph " + std::to_string(id) + ": feature matrix shape mismatch");
  }
  Graph g;
  g.id = id;
  g.label = label;
  g.num_nodes = num_nodes;
  g.feature_dim = feature_dim;
  g.features = std::move(features);
  g.edges.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      throw SchemaError("graph " + std::to_string(id) + ": edge endpoint out of range");
    }
    if (u == v) throw SchemaError("graph " + std::to_string(id) + ": self-loop at node " + std::to_string(u));
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
    throw SchemaError("graph " + std::to_string(id) + ": duplicate undirected edge");
  }
  g.adjacency.assign(num_nodes, {});
  for (auto [u, v] : g.edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

enum class Split : unsigned char { train = 0, val = 1, test = 2 };

struct Dataset {
  std::vector<Graph> graphs;
  int num_classes = 0;
  int feature_dim = 0;
  std::optional<std::vector<Split>> split;  // per graph index, when assigned

  std::vector<std::size_t> indices_in(Split s) const {
    std::vector<std::size_t> out;
    if (!split) return out;
    for (std::size_t i = 0; i < split->size(); ++i) {
      if ((*split)[i] == s) out.push_back(i);
    }
    return out;
  }

  // Copy containing only the given graphs; the split assignment is dropped.
  Dataset subset(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.num_classes = num_classes;
    out.feature_dim = feature_dim;
    out.graphs.reserve(indices.size());
    for (std::size_t i : indices) out.graphs.push_back(graphs[i]);
    return out;
  }
};

inline bool graphs_equal(const Graph& a, const Graph& b) {
  return a.id == b.id && a.label == b.label && a.num_nodes == b.num_nodes &&
         a.feature_dim == b.feature_dim &&
         std::memcmp(a.features.data(), b.features.data(),
                     a.features.size() * sizeof(double)) == 0 &&
         a.edges == b.edges;
}

inline bool datasets_equal(const Dataset& a, const Dataset& b) {
  if (a.graphs.size() != b.graphs.size() || a.num_classes != b.num_classes ||
      a.feature_dim != b.feature_dim) {
    return false;
  }
  for (std::size_t i = 0; i < a.graphs.size(); ++i) {
    if (!graphs_equal(a.graphs[i], b.graphs[i])) return false;
  }
  return true;
}

// Interns feature vectors under exact bitwise equality of their 64-bit
// serializations; ids are dense in [0, size()).
class FeatureDictionary {
 public:
  static std::string key_of(const double* v, int dim) {
    std::string key(static_cast<std::size_t>(dim) * sizeof(double), '\0');
    if (dim > 0) std::memcpy(key.data(), v, key.size());
    return key;
  }

  int intern(const double* v, int dim) {
    std::string key = key_of(v, dim);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(entries_.size());
    entries_.emplace_back(v, v + dim);
    index_.emplace(std::move(key), id);
    return id;
  }

  int lookup(const double* v, int dim) const {
    auto it = index_.find(key_of(v, dim));
    return it == index_.end() ? -1 : it->second;
  }

  const std::vector<double>& entry(int id) const { return entries_.at(id); }
  int size() const { return static_cast<int>(entries_.size()); }
  int dim() const { return entries_.empty() ? 0 : static_cast<int>(entries_.front().size()); }

  bool operator==(const FeatureDictionary& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::vector<double>> entries_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace treedistill

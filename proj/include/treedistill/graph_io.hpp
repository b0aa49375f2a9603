#pragma once

// Dataset ingestion: JSONL graphs, TU-style plain-text directories, canonical
// re-serialization and seeded train/val/test splitting.

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "treedistill/graph.hpp"

namespace treedistill {

namespace detail {

inline Graph graph_from_json(const nlohmann::json& obj, const std::string& where) {
  for (const char* key : {"id", "label", "nodes", "edges"}) {
    if (!obj.contains(key)) throw SchemaError(where + ": missing key '" + key + "'");
  }
  if (!obj["id"].is_number_integer()) throw SchemaError(where + ": 'id' must be an integer");
  if (!obj["label"].is_number_integer() || obj["label"].get<long long>() < 0) {
    throw SchemaError(where + ": 'label' must be a non-negative integer");
  }
  const auto& nodes = obj["nodes"];
  if (!nodes.is_array() || nodes.empty()) throw SchemaError(where + ": 'nodes' must be a non-empty array");
  int n = static_cast<int>(nodes.size());
  int dim = -1;
  std::vector<double> features;
  for (const auto& row : nodes) {
    if (!row.is_array()) throw SchemaError(where + ": node feature row must be an array");
    if (dim < 0) {
      dim = static_cast<int>(row.size());
      features.reserve(static_cast<std::size_t>(n) * dim);
    } else if (static_cast<int>(row.size()) != dim) {
      throw SchemaError(where + ": ragged node feature rows");
    }
    for (const auto& x : row) {
      if (!x.is_number()) throw SchemaError(where + ": node feature must be a number");
      features.push_back(x.get<double>());
    }
  }
  std::vector<std::pair<int, int>> edges;
  if (!obj["edges"].is_array()) throw SchemaError(where + ": 'edges' must be an array");
  for (const auto& e : obj["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw SchemaError(where + ": edge must be a pair of integers");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  try {
    return make_graph(obj["id"].get<int>(), obj["label"].get<int>(), n, dim, std::move(features), edges);
  } catch (const SchemaError& err) {
    throw SchemaError(where + ": " + err.what());
  }
}

inline void finalize_dataset(Dataset& ds, const std::string& origin) {
  if (ds.graphs.empty()) throw SchemaError(origin + ": dataset contains no graphs");
  ds.feature_dim = ds.graphs.front().feature_dim;
  int max_label = 0;
  for (const Graph& g : ds.graphs) {
    if (g.feature_dim != ds.feature_dim) {
      throw SchemaError(origin + ": graph " + std::to_string(g.id) +
                        " feature dim differs from dataset");
    }
    max_label = std::max(max_label, g.label);
  }
  ds.num_classes = max_label + 1;
}

}  // namespace detail

// One JSON object per line: {"id":int,"label":int,"nodes":[[f,...],...],"edges":[[u,v],...]}.
inline Dataset load_jsonl_stream(std::istream& in, const std::string& origin = "<stream>") {
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = origin + ":" + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!obj.is_object()) throw SchemaError(where + ": line is not a JSON object");
    ds.graphs.push_back(detail::graph_from_json(obj, where));
  }
  detail::finalize_dataset(ds, origin);
  return ds;
}

inline Dataset load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return load_jsonl_stream(in, path);
}

// Canonical serialization: sorted keys, shortest round-trip floats. Used for
// round-trip checks and as the byte-size reference of the full dataset.
inline std::string serialize_jsonl(const Dataset& ds) {
  std::string out;
  for (const Graph& g : ds.graphs) {
    nlohmann::json obj;
    obj["id"] = g.id;
    obj["label"] = g.label;
    auto nodes = nlohmann::json::array();
    for (int v = 0; v < g.num_nodes; ++v) {
      auto row = nlohmann::json::array();
      for (int k = 0; k < g.feature_dim; ++k) row.push_back(g.feature_row(v)[k]);
      nodes.push_back(std::move(row));
    }
    obj["nodes"] = std::move(nodes);
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges) edges.push_back(nlohmann::json::array({u, v}));
    obj["edges"] = std::move(edges);
    out += obj.dump();
    out += '\n';
  }
  return out;
}

inline std::size_t write_jsonl(const Dataset& ds, const std::string& path) {
  std::string body = serialize_jsonl(ds);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw IoError("short write to " + path);
  return body.size();
}

namespace detail {

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline long long parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected integer, got '" + s + "'");
  }
}

inline std::pair<long long, long long> parse_int_pair(const std::string& line, const std::string& where) {
  std::string a, b;
  auto comma = line.find(',');
  if (comma == std::string::npos) throw ParseError(where + ": expected 'u, v'");
  a = line.substr(0, comma);
  b = line.substr(comma + 1);
  auto strip = [](std::string s) {
    std::size_t b0 = s.find_first_not_of(" \t");
    std::size_t e0 = s.find_last_not_of(" \t");
    return b0 == std::string::npos ? std::string() : s.substr(b0, e0 - b0 + 1);
  };
  return {parse_int(strip(a), where), parse_int(strip(b), where)};
}

}  // namespace detail

// TU-style directory: <DS>_A.txt (1-based global edge list, both directions),
// <DS>_graph_indicator.txt, <DS>_graph_labels.txt, optional <DS>_node_labels.txt
// (one-hot encoded). Graph labels are densified to 0-based ids preserving
// sorted original order; missing node labels give feature_dim 0.
inline Dataset load_tu(const std::string& dir) {
  namespace fs = std::filesystem;
  std::string prefix;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.size() > 6 && name.substr(name.size() - 6) == "_A.txt") {
      prefix = name.substr(0, name.size() - 6);
      break;
    }
  }
  if (prefix.empty()) throw IoError("no *_A.txt edge file in " + dir);
  auto file = [&](const std::string& suffix) { return dir + "/" + prefix + suffix; };

  auto indicator_lines = detail::read_lines(file("_graph_indicator.txt"));
  auto label_lines = detail::read_lines(file("_graph_labels.txt"));
  auto edge_lines = detail::read_lines(file("_A.txt"));

  std::size_t total_nodes = indicator_lines.size();
  std::size_t num_graphs = label_lines.size();
  if (num_graphs == 0) throw SchemaError(dir + ": no graphs");

  std::vector<int> node_graph(total_nodes);  // 0-based graph index per global node
  std::vector<int> node_local(total_nodes);
  std::vector<int> graph_sizes(num_graphs, 0);
  for (std::size_t i = 0; i < total_nodes; ++i) {
    long long gid = detail::parse_int(indicator_lines[i], file("_graph_indicator.txt") + ":" + std::to_string(i + 1));
    if (gid < 1 || gid > static_cast<long long>(num_graphs)) {
      throw InconsistencyError("node " + std::to_string(i + 1) + " assigned to unknown graph " + std::to_string(gid));
    }
    node_graph[i] = static_cast<int>(gid - 1);
    node_local[i] = graph_sizes[node_graph[i]]++;
  }

  // Densify graph labels preserving sorted original order (e.g. {-1,1} -> {0,1}).
  std::vector<long long> raw_labels(num_graphs);
  std::set<long long> distinct_labels;
  for (std::size_t g = 0; g < num_graphs; ++g) {
    raw_labels[g] = detail::parse_int(label_lines[g], file("_graph_labels.txt") + ":" + std::to_string(g + 1));
    distinct_labels.insert(raw_labels[g]);
  }
  std::map<long long, int> label_map;
  for (long long l : distinct_labels) label_map.emplace(l, static_cast<int>(label_map.size()));

  // Optional node labels, one-hot encoded over the sorted distinct values.
  int feature_dim = 0;
  std::vector<int> node_feature_index(total_nodes, 0);
  std::string node_labels_path = file("_node_labels.txt");
  if (fs::exists(node_labels_path)) {
    auto node_label_lines = detail::read_lines(node_labels_path);
    if (node_label_lines.size() != total_nodes) {
      throw InconsistencyError(node_labels_path + ": line count does not match graph_indicator");
    }
    std::vector<long long> raw(total_nodes);
    std::set<long long> distinct;
    for (std::size_t i = 0; i < total_nodes; ++i) {
      raw[i] = detail::parse_int(node_label_lines[i], node_labels_path + ":" + std::to_string(i + 1));
      distinct.insert(raw[i]);
    }
    std::map<long long, int> m;
    for (long long l : distinct) m.emplace(l, static_cast<int>(m.size()));
    feature_dim = static_cast<int>(m.size());
    for (std::size_t i = 0; i < total_nodes; ++i) node_feature_index[i] = m[raw[i]];
  }

  std::vector<std::set<std::pair<int, int>>> edge_sets(num_graphs);
  for (std::size_t ln = 0; ln < edge_lines.size(); ++ln) {
    if (edge_lines[ln].empty()) continue;
    std::string where = file("_A.txt") + ":" + std::to_string(ln + 1);
    auto [u, v] = detail::parse_int_pair(edge_lines[ln], where);
    if (u < 1 || v < 1 || u > static_cast<long long>(total_nodes) || v > static_cast<long long>(total_nodes)) {
      throw ParseError(where + ": node id out of range");
    }
    int gu = node_graph[u - 1], gv = node_graph[v - 1];
    if (gu != gv) {
      throw InconsistencyError(where + ": edge crosses graphs " + std::to_string(gu + 1) +
                               " and " + std::to_string(gv + 1));
    }
    int a = node_local[u - 1], b = node_local[v - 1];
    if (a == b) throw SchemaError(where + ": self-loop");
    edge_sets[gu].insert({std::min(a, b), std::max(a, b)});
  }

  Dataset ds;
  ds.graphs.reserve(num_graphs);
  // Local node index order within a graph follows ascending global node id.
  std::vector<std::vector<int>> graph_nodes(num_graphs);
  for (std::size_t i = 0; i < total_nodes; ++i) graph_nodes[node_graph[i]].push_back(static_cast<int>(i));
  for (std::size_t g = 0; g < num_graphs; ++g) {
    int n = graph_sizes[g];
    if (n == 0) throw SchemaError(dir + ": graph " + std::to_string(g + 1) + " has no nodes");
    std::vector<double> features(static_cast<std::size_t>(n) * feature_dim, 0.0);
    if (feature_dim > 0) {
      for (int global : graph_nodes[g]) {
        features[static_cast<std::size_t>(node_local[global]) * feature_dim +
                 node_feature_index[global]] = 1.0;
      }
    }
    std::vector<std::pair<int, int>> edges(edge_sets[g].begin(), edge_sets[g].end());
    ds.graphs.push_back(make_graph(static_cast<int>(g), label_map[raw_labels[g]], n,
                                   feature_dim, std::move(features), edges));
  }
  detail::finalize_dataset(ds, dir);
  return ds;
}

// Seeded permutation split. Sizes are floor-based with the remainder assigned
// to train; fractions must be positive and sum to 1 within 1e-9.
inline Dataset split_dataset(const Dataset& ds, double f_train, double f_val, double f_test,
                             std::uint64_t seed) {
  if (f_train <= 0 || f_val <= 0 || f_test <= 0) {
    throw ArgumentError("split fractions must be positive");
  }
  if (std::abs(f_train + f_val + f_test - 1.0) > 1e-9) {
    throw ArgumentError("split fractions must sum to 1");
  }
  std::size_t n = ds.graphs.size();
  auto n_train = static_cast<std::size_t>(std::floor(f_train * static_cast<double>(n)));
  auto n_val = static_cast<std::size_t>(std::floor(f_val * static_cast<double>(n)));
  auto n_test = static_cast<std::size_t>(std::floor(f_test * static_cast<double>(n)));
  n_train += n - (n_train + n_val + n_test);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  Dataset out = ds;
  std::vector<Split> assignment(n, Split::train);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n_train) assignment[order[i]] = Split::train;
    else if (i < n_train + n_val) assignment[order[i]] = Split::val;
    else assignment[order[i]] = Split::test;
  }
  out.split = std::move(assignment);
  return out;
}

}  // namespace treedistill

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "core/error.hpp"
#include "search/search.hpp"

namespace majcirc::search {

namespace {

[[noreturn]] void precondition(const std::string& what) { throw Error(ErrorKind::precondition, "fooling input: " + what); }

/// Lowest-index-leaf-first peeling of a tree given by its edge list; returns
/// the first `count` removed vertices.
std::vector<std::uint32_t> peel_leaves(const std::vector<std::uint32_t>& vertices,
                                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& tree_edges,
                                       std::uint32_t count) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> adj;
  for (auto v : vertices) adj[v];
  for (auto [a, b] : tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::map<std::uint32_t, std::uint32_t> degree;
  for (auto& [v, nb] : adj) degree[v] = static_cast<std::uint32_t>(nb.size());
  std::set<std::uint32_t> alive(vertices.begin(), vertices.end());
  std::vector<std::uint32_t> out;
  while (out.size() < count) {
    std::uint32_t leaf = 0;
    for (auto v : alive)
      if (degree[v] <= 1) {
        leaf = v;
        break;
      }
    out.push_back(leaf);
    alive.erase(leaf);
    for (auto u : adj[leaf])
      if (alive.count(u)) --degree[u];
  }
  return out;
}

}  // namespace

OmissionGraph::OmissionGraph(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : n_(n), edges_(std::move(edges)) {
  std::vector<std::uint32_t> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto& [a, b] : edges_) {
    if (a < 1 || b < 1 || a > n || b > n || a == b)
      throw Error(ErrorKind::invalid_argument, "omission graph: edge endpoints must be distinct variables in [1, n]");
    if (a > b) std::swap(a, b);
    parent[find(a)] = find(b);
  }
  std::map<std::uint32_t, Component> by_root;
  for (std::uint32_t v = 1; v <= n; ++v) by_root[find(v)].vertices.push_back(v);
  for (std::uint32_t e = 0; e < edges_.size(); ++e) by_root[find(edges_[e].first)].edges.push_back(e);
  for (auto& [root, c] : by_root) components_.push_back(std::move(c));
  std::sort(components_.begin(), components_.end(), [](const Component& a, const Component& b) {
    if (a.p() != b.p()) return a.p() < b.p();
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices.front() < b.vertices.front();
  });
}

OmissionGraph OmissionGraph::from_circuit(const LayeredCircuit& c) {
  const std::uint32_t n = c.n();
  if (n < 3 || n % 2 == 0) precondition("n must be odd and at least 3, got " + std::to_string(n));
  if (c.depth() != 2) precondition("circuit depth must be 2, got " + std::to_string(c.depth()));
  const auto& bottom = c.layer(1);
  if (bottom.size() != n - 2)
    precondition("expected n-2 = " + std::to_string(n - 2) + " bottom gates, got " + std::to_string(bottom.size()));

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t g = 0; g < bottom.size(); ++g) {
    const auto& gate = bottom[g];
    const auto name = "bottom gate " + std::to_string(g + 1);
    for (const auto& in : gate.inputs)
      if (in.weight != 1) precondition(name + " repeats variable x" + std::to_string(in.ref.id));
    if (gate.fan_in() != n - 2)
      precondition(name + " has fan-in " + std::to_string(gate.fan_in()) + ", expected " + std::to_string(n - 2));
    if (!is_standard_majority(gate)) precondition(name + " is not a standard majority");
    std::vector<bool> seen(n + 1, false);
    for (const auto& in : gate.inputs) seen[in.ref.id] = true;
    std::vector<std::uint32_t> missing;
    for (std::uint32_t v = 1; v <= n; ++v)
      if (!seen[v]) missing.push_back(v);
    edges.emplace_back(missing[0], missing[1]);
  }
  const auto& top = c.top_gate();
  if (!is_standard_majority(top)) precondition("top gate is not a standard majority");
  if (top.inputs.size() != n - 2 || top.fan_in() != n - 2)
    precondition("top gate must read every bottom gate once");
  return OmissionGraph(n, std::move(edges));
}

FoolingResult fooling_details(const LayeredCircuit& c) {
  const auto graph = OmissionGraph::from_circuit(c);
  const std::uint32_t n = c.n();
  const std::uint32_t l = (n - 1) / 2;
  const auto& edges = graph.edges();

  std::vector<std::uint32_t> zeros;
  for (const auto& comp : graph.components()) {
    const auto left = l - static_cast<std::uint32_t>(zeros.size());
    if (left == 0) break;
    if (comp.vertices.size() <= left) {
      zeros.insert(zeros.end(), comp.vertices.begin(), comp.vertices.end());
      continue;
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tree;
    if (comp.p() == -1) {
      for (auto e : comp.edges) tree.push_back(edges[e]);
    } else {
      // BFS spanning tree from the lowest vertex, neighbours in ascending order.
      std::map<std::uint32_t, std::set<std::uint32_t>> adj;
      for (auto e : comp.edges) {
        adj[edges[e].first].insert(edges[e].second);
        adj[edges[e].second].insert(edges[e].first);
      }
      std::set<std::uint32_t> seen{comp.vertices.front()};
      std::deque<std::uint32_t> queue{comp.vertices.front()};
      while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (auto u : adj[v])
          if (seen.insert(u).second) {
            tree.emplace_back(v, u);
            queue.push_back(u);
          }
      }
    }
    const auto part = peel_leaves(comp.vertices, tree, left);
    zeros.insert(zeros.end(), part.begin(), part.end());
    break;
  }
  std::sort(zeros.begin(), zeros.end());

  std::vector<std::uint8_t> bits(n, 1);
  for (auto v : zeros) bits[v - 1] = 0;
  FoolingResult result{Assignment::from_bits(bits), zeros, 0};
  for (auto [a, b] : edges)
    if (!bits[a - 1] || !bits[b - 1]) ++result.zero_edges;

  if (zeros.size() != l || result.zero_edges + 1 > l || eval_circuit(c, result.assignment))
    throw Error(ErrorKind::encoder_bug, "fooling construction did not produce a fooling minterm");
  return result;
}

Assignment fooling_input(const LayeredCircuit& c) { return fooling_details(c).assignment; }

}  // namespace majcirc::search

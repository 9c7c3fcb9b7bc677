#include "gmrf/graph.hpp"

#include <algorithm>
#include <string>

namespace gmrf {

namespace {

void check_vertex(Index p, Index j, const char* what) {
  if (j < 0 || j >= p) {
    fail(ErrorCode::invalid_argument, std::string(what) + ": vertex " + std::to_string(j) +
                                          " outside [0, " + std::to_string(p) + ")");
  }
}

}  // namespace

SparsityPattern::SparsityPattern(Index p) {
  if (p < 1) fail(ErrorCode::invalid_argument, "sparsity pattern needs at least one vertex");
  columns_.resize(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) columns_[static_cast<std::size_t>(j)] = {j};
}

SparsityPattern SparsityPattern::from_edges(Index p,
                                            std::span<const std::pair<Index, Index>> edges) {
  SparsityPattern g(p);
  for (auto [i, j] : edges) {
    check_vertex(p, i, "edge");
    check_vertex(p, j, "edge");
    g.columns_[static_cast<std::size_t>(j)].push_back(i);
    g.columns_[static_cast<std::size_t>(i)].push_back(j);
  }
  for (auto& col : g.columns_) {
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
  }
  return g;
}

bool SparsityPattern::contains(Index i, Index j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size()) return false;
  const auto& col = columns_[static_cast<std::size_t>(j)];
  return std::binary_search(col.begin(), col.end(), i);
}

std::span<const Index> SparsityPattern::column(Index j) const {
  check_vertex(size(), j, "column");
  return columns_[static_cast<std::size_t>(j)];
}

Index SparsityPattern::edge_pairs() const noexcept {
  Index total = 0;
  for (const auto& col : columns_) total += static_cast<Index>(col.size());
  return (total - size()) / 2;
}

Index SparsityPattern::stored_entries() const noexcept { return size() + 2 * edge_pairs(); }

std::vector<std::pair<Index, Index>> SparsityPattern::lower_entries() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index j = 0; j < size(); ++j) {
    for (Index i : columns_[static_cast<std::size_t>(j)]) {
      if (i >= j) out.emplace_back(i, j);
    }
  }
  return out;
}

bool SparsityPattern::is_subset_of(const SparsityPattern& other) const {
  if (size() != other.size()) return false;
  for (Index j = 0; j < size(); ++j) {
    const auto& mine = columns_[static_cast<std::size_t>(j)];
    const auto& theirs = other.columns_[static_cast<std::size_t>(j)];
    if (!std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end())) return false;
  }
  return true;
}

Index NeighborSet::local_position() const {
  auto it = std::lower_bound(members.begin(), members.end(), vertex);
  if (it == members.end() || *it != vertex) {
    fail(ErrorCode::invalid_argument, "neighbor set does not contain its own vertex");
  }
  return static_cast<Index>(it - members.begin());
}

SparsityPattern identity_pattern(Index p) { return SparsityPattern(p); }

SparsityPattern band_pattern(Index p, Index bandwidth) {
  if (p < 1) fail(ErrorCode::invalid_argument, "band pattern needs p >= 1");
  if (bandwidth < 0) fail(ErrorCode::invalid_argument, "bandwidth must be non-negative");
  std::vector<std::pair<Index, Index>> edges;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p && i - j <= bandwidth; ++i) edges.emplace_back(i, j);
  }
  return SparsityPattern::from_edges(p, edges);
}

SparsityPattern expand_order(const SparsityPattern& g, int order) {
  if (order < 0) fail(ErrorCode::invalid_argument, "markov order must be non-negative");
  const Index p = g.size();
  if (order == 0) return SparsityPattern(p);
  if (order == 1) return g;

  // Depth-limited BFS from every vertex; lower triangle only.
  std::vector<std::pair<Index, Index>> edges;
  std::vector<int> depth(static_cast<std::size_t>(p), -1);
  std::vector<Index> frontier, next, visited;
  for (Index s = 0; s < p; ++s) {
    frontier.assign(1, s);
    visited.assign(1, s);
    depth[static_cast<std::size_t>(s)] = 0;
    for (int d = 1; d <= order && !frontier.empty(); ++d) {
      next.clear();
      for (Index u : frontier) {
        for (Index v : g.column(u)) {
          if (depth[static_cast<std::size_t>(v)] < 0) {
            depth[static_cast<std::size_t>(v)] = d;
            next.push_back(v);
            visited.push_back(v);
          }
        }
      }
      frontier.swap(next);
    }
    for (Index v : visited) {
      if (v > s) edges.emplace_back(v, s);
      depth[static_cast<std::size_t>(v)] = -1;
    }
  }
  return SparsityPattern::from_edges(p, edges);
}

NeighborSet neighbor_set(const SparsityPattern& g, Index j) {
  check_vertex(g.size(), j, "neighbor_set");
  auto col = g.column(j);
  return NeighborSet{j, std::vector<Index>(col.begin(), col.end())};
}

}  // namespace gmrf

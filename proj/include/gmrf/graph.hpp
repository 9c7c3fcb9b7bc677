#pragma once

#include "gmrf/errors.hpp"

#include <span>
#include <utility>
#include <vector>

namespace gmrf {

/// Symmetric sparsity pattern over `size()` vertices. The diagonal is always
/// present; each column is kept sorted and duplicate-free.
class SparsityPattern {
 public:
  SparsityPattern() = default;

  /// Identity pattern (diagonal only).
  explicit SparsityPattern(Index p);

  /// Builds the symmetric closure of `edges`. Missing diagonal entries are
  /// added. Throws invalid-argument for p < 1 or out-of-range indices.
  static SparsityPattern from_edges(Index p, std::span<const std::pair<Index, Index>> edges);

  Index size() const noexcept { return static_cast<Index>(columns_.size()); }
  bool contains(Index i, Index j) const;
  std::span<const Index> column(Index j) const;

  /// Number of unordered off-diagonal pairs {i, j}.
  Index edge_pairs() const noexcept;
  /// Entries of the full symmetric matrix: p + 2 * edge_pairs().
  Index stored_entries() const noexcept;

  /// Pairs (i, j) with i >= j, column-major.
  std::vector<std::pair<Index, Index>> lower_entries() const;

  bool is_subset_of(const SparsityPattern& other) const;

  friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;

 private:
  std::vector<std::vector<Index>> columns_;
};

/// ne(j) together with j itself, sorted ascending.
struct NeighborSet {
  Index vertex = 0;
  std::vector<Index> members;

  /// Position of `vertex` inside `members`.
  Index local_position() const;
};

SparsityPattern identity_pattern(Index p);

/// (i, j) present iff |i - j| <= bandwidth.
SparsityPattern band_pattern(Index p, Index bandwidth);

/// Support of (A + I)^order: vertices within graph distance `order`.
/// Order 0 is the identity pattern; order 1 returns `g`.
SparsityPattern expand_order(const SparsityPattern& g, int order);

NeighborSet neighbor_set(const SparsityPattern& g, Index j);

}  // namespace gmrf

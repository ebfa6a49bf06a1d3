#pragma once

// Collapsing of planar point sets and exhaustive search for n-optimal sets in
// imaginary quadratic fields.

#include <cstdint>
#include <string>
#include <vector>

#include "uset/field.hpp"
#include "uset/point_set.hpp"

namespace uset {

/// Direction in which points move. Vertical moves points within their
/// columns toward a horizontal axis row; Horizontal moves them within rows
/// toward a vertical axis column.
enum class CollapseDirection { Vertical, Horizontal };

/// Collapses S toward the axis through its densest row (Vertical) or column
/// (Horizontal), ties going to the lower median of the tied lines. On each perpendicular
/// line the points are replaced by the same number of consecutive lattice
/// points filled in the order axis, axis+1, axis-1, axis+2, ...
/// Only rectangular lattices (imaginary fields with d = 2, 3 mod 4).
PointSet collapse_axis(const PointSet& S, CollapseDirection direction);

/// Collapse along an explicit axis coordinate.
PointSet collapse_about(const PointSet& S, CollapseDirection direction, long axis);

bool is_collapsed(const PointSet& S, CollapseDirection direction);

struct SearchBox {
  long width = 7;
  long height = 7;
  std::string justification;
};

/// The (n+1)x(n+1) box, or 7x7 when that is larger, with the reason it
/// decides existence.
SearchBox default_search_box(const Field& field, std::size_t n);

struct SearchOptions {
  /// Cut partial sets whose running valuations exceed the optimal volume.
  bool prune = true;
  /// Abort with BudgetExceeded after this many search nodes.
  std::uint64_t node_budget = 4'000'000'000ull;
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 1;
  /// Report one set per orbit under multiplication by units.
  bool unit_reduction = false;
  /// Also identify a set with its complex conjugate.
  bool conjugation_reduction = false;
};

struct SearchResult {
  std::size_t n = 0;
  SearchBox box;
  /// Normalized by translation: lexicographically smallest element at 0.
  std::vector<PointSet> sets;
  std::uint64_t nodes = 0;
  /// States what an empty result does and does not show.
  std::string scope;
};

/// All (n+1)-subsets of the box, up to translation, with
/// Vol(S) = (prod_{k<=n} k!_K)^2. Every returned set is certified with
/// is_n_optimal.
SearchResult search_optimal(const Field& field, std::size_t n, const SearchBox& box,
                            const SearchOptions& options = {});

}  // namespace uset

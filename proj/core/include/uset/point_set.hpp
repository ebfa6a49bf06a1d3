#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "uset/field.hpp"

namespace uset {

/// A finite, duplicate-free list of elements of O_K. Insertion order is kept
/// because Newton sequences and construction chains care about it.
class PointSet {
 public:
  explicit PointSet(const Field& field) : field_(field) {}
  /// Throws InputError on duplicates or mixed fields.
  PointSet(const Field& field, std::vector<QuadInt> elements);
  /// Convenience: coordinates (a, b) meaning a + b*w.
  static PointSet from_coords(const Field& field,
                              std::initializer_list<std::pair<long, long>> coords);
  static PointSet from_coords(const Field& field,
                              const std::vector<std::pair<long, long>>& coords);

  const Field& field() const { return field_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const QuadInt& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<QuadInt>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const QuadInt& x) const;
  /// Appends x; throws InputError if already present.
  void insert(const QuadInt& x);
  PointSet with(const QuadInt& x) const;
  PointSet prefix(std::size_t k) const;

  PointSet translated(const QuadInt& c) const;
  PointSet scaled(const QuadInt& u) const;
  /// Same elements sorted by coordinate_less.
  PointSet sorted() const;

  std::string to_string() const;

  /// Equality as sets (order ignored).
  bool same_elements(const PointSet& other) const;

 private:
  Field field_;
  std::vector<QuadInt> elements_;
};

}  // namespace uset

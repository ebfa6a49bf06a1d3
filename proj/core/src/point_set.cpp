#include "uset/point_set.hpp"

#include <algorithm>

#include "uset/errors.hpp"

namespace uset {

PointSet::PointSet(const Field& field, std::vector<QuadInt> elements) : field_(field) {
  elements_.reserve(elements.size());
  for (auto& x : elements) insert(x);
}

PointSet PointSet::from_coords(const Field& field,
                               std::initializer_list<std::pair<long, long>> coords) {
  return from_coords(field, std::vector<std::pair<long, long>>(coords));
}

PointSet PointSet::from_coords(const Field& field,
                               const std::vector<std::pair<long, long>>& coords) {
  PointSet s(field);
  for (const auto& [a, b] : coords) s.insert(QuadInt(field, a, b));
  return s;
}

bool PointSet::contains(const QuadInt& x) const {
  return std::find(elements_.begin(), elements_.end(), x) != elements_.end();
}

void PointSet::insert(const QuadInt& x) {
  if (!(x.field() == field_))
    throw InputError("point " + x.to_string() + " belongs to " + x.field().to_string() +
                     ", set is over " + field_.to_string());
  if (contains(x)) throw InputError("duplicate point " + x.to_string());
  elements_.push_back(x);
}

PointSet PointSet::with(const QuadInt& x) const {
  PointSet r = *this;
  r.insert(x);
  return r;
}

PointSet PointSet::prefix(std::size_t k) const {
  if (k > size()) throw InputError("prefix longer than the set");
  PointSet r(field_);
  r.elements_.assign(elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

PointSet PointSet::translated(const QuadInt& c) const {
  PointSet r(field_);
  for (const auto& x : elements_) r.elements_.push_back(x + c);
  return r;
}

PointSet PointSet::scaled(const QuadInt& u) const {
  if (u.is_zero()) throw InputError("scaling by zero collapses the set");
  PointSet r(field_);
  for (const auto& x : elements_) r.elements_.push_back(x * u);
  return r;
}

PointSet PointSet::sorted() const {
  PointSet r = *this;
  std::sort(r.elements_.begin(), r.elements_.end(), coordinate_less);
  return r;
}

std::string PointSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ", ";
    s += elements_[i].to_string();
  }
  return s + "}";
}

bool PointSet::same_elements(const PointSet& other) const {
  if (!(field_ == other.field_) || size() != other.size()) return false;
  return sorted().elements_ == other.sorted().elements_;
}

}  // namespace uset

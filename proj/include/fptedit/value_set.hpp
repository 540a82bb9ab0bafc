#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace fptedit {

// Finite set of non-negative integers, kept sorted and unique. Used for the
// degree lists and common-neighbour lists attached to vertices, edges and
// vertex pairs.
class ValueSet {
public:
  ValueSet() = default;
  ValueSet(std::initializer_list<int> values) : values_(values) { normalize(); }
  explicit ValueSet(std::vector<int> values) : values_(std::move(values)) { normalize(); }

  static ValueSet singleton(int value) { return ValueSet{value}; }

  static ValueSet range(int lo, int hi) {
    if (lo > hi)
      throw std::invalid_argument("empty range " + std::to_string(lo) + ".." + std::to_string(hi));
    std::vector<int> v;
    for (int x = lo; x <= hi; ++x)
      v.push_back(x);
    return ValueSet(std::move(v));
  }

  bool contains(std::int64_t value) const {
    return std::binary_search(values_.begin(), values_.end(), value,
                              [](auto a, auto b) { return static_cast<std::int64_t>(a) < static_cast<std::int64_t>(b); });
  }

  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  bool is_singleton() const { return values_.size() == 1; }
  int min() const { return values_.front(); }
  int max() const { return values_.back(); }
  const std::vector<int>& values() const { return values_; }

  auto operator<=>(const ValueSet&) const = default;
  bool operator==(const ValueSet&) const = default;

  // Canonical text form: runs of three or more consecutive values collapse to a..b.
  std::string to_string() const {
    std::string out = "{";
    std::size_t i = 0;
    bool first = true;
    while (i < values_.size()) {
      std::size_t j = i;
      while (j + 1 < values_.size() && values_[j + 1] == values_[j] + 1)
        ++j;
      if (!first)
        out += ',';
      first = false;
      if (j - i >= 2) {
        out += std::to_string(values_[i]) + ".." + std::to_string(values_[j]);
      } else {
        for (std::size_t t = i; t <= j; ++t) {
          if (t != i)
            out += ',';
          out += std::to_string(values_[t]);
        }
      }
      i = j + 1;
    }
    return out + "}";
  }

private:
  void normalize() {
    std::sort(values_.begin(), values_.end());
    values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
    if (!values_.empty() && values_.front() < 0)
      throw std::invalid_argument("value sets hold non-negative integers only");
  }

  std::vector<int> values_;
};

} // namespace fptedit

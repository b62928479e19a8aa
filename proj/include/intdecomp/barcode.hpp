#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace intdecomp {

/// Half-open interval [birth, death) of grade labels; no death means the bar
/// lives to +infinity.
struct Interval {
  std::int64_t birth = 0;
  std::optional<std::int64_t> death;

  bool alive_at(std::int64_t g) const { return birth <= g && (!death || g < *death); }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::strong_ordering operator<=>(const Interval& a, const Interval& b) {
    if (auto c = a.birth <=> b.birth; c != 0) return c;
    if (a.death.has_value() != b.death.has_value()) return a.death ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a.death) return std::strong_ordering::equal;
    return *a.death <=> *b.death;
  }
};

/// Multiset of intervals, kept sorted by (birth, death) with infinite deaths last.
class Barcode {
 public:
  using Map = std::map<Interval, std::size_t>;

  void add(const Interval& bar, std::size_t mult = 1) {
    if (mult > 0) bars_[bar] += mult;
  }

  std::size_t multiplicity(const Interval& bar) const {
    auto it = bars_.find(bar);
    return it == bars_.end() ? 0 : it->second;
  }

  /// Number of bars (with multiplicity) containing grade g.
  std::size_t alive_at(std::int64_t g) const {
    std::size_t n = 0;
    for (const auto& [bar, m] : bars_)
      if (bar.alive_at(g)) n += m;
    return n;
  }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [bar, m] : bars_) n += m;
    return n;
  }

  bool empty() const { return bars_.empty(); }
  const Map& bars() const { return bars_; }
  Map::const_iterator begin() const { return bars_.begin(); }
  Map::const_iterator end() const { return bars_.end(); }

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  Map bars_;
};

inline std::string to_string(const Interval& bar) {
  return "[" + std::to_string(bar.birth) + ", " + (bar.death ? std::to_string(*bar.death) : std::string("inf")) + ")";
}

inline std::string to_string(const Barcode& b) {
  std::string s = "{";
  bool first = true;
  for (const auto& [bar, m] : b) {
    if (!first) s += ", ";
    first = false;
    s += to_string(bar);
    if (m > 1) s += "x" + std::to_string(m);
  }
  return s + "}";
}

}  // namespace intdecomp

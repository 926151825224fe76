#pragma once

// Small construction helpers shared by the test suites.

#include <hnstrat/kottwitz.hpp>
#include <hnstrat/rational.hpp>
#include <hnstrat/rootdata.hpp>
#include <hnstrat/strata.hpp>

#include <string>
#include <utility>
#include <vector>

namespace tests {

using namespace hnstrat;

// "1,-1/2,3" -> RatVec
inline RatVec rv(const std::string& csv) {
  RatVec out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(parse_rat(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(parse_rat(cur));
  return out;
}

inline NewtonPoint np(const std::string& csv) { return NewtonPoint(rv(csv)); }

inline Cocharacter cc(std::vector<Int> v) { return Cocharacter(std::move(v)); }

// (1^k, 0^(n-k))
inline Cocharacter ones_zeros(Int k, Int n) {
  std::vector<Int> v;
  for (Int i = 0; i < n; ++i) v.push_back(i < k ? 1 : 0);
  return Cocharacter(std::move(v));
}

// value repeated count times, concatenated left to right
inline RatVec rep(std::initializer_list<std::pair<Rat, std::size_t>> runs) {
  RatVec out;
  for (const auto& [value, count] : runs) out.insert(out.end(), count, value);
  return out;
}

// All weakly decreasing integer tuples of the given length with entries in
// [lo, hi]: the dominant representatives of the test grids.
inline std::vector<Cocharacter> dominant_grid(Int length, Int lo, Int hi) {
  std::vector<Cocharacter> out;
  for (Int sum = lo * length; sum <= hi * length; ++sum)
    for (auto& tuple : hnstrat::detail::desc_tuples(length, sum, lo, hi))
      out.emplace_back(std::move(tuple));
  return out;
}

// All compositions of n in lexicographic order.
inline std::vector<Composition> all_compositions(Int n) {
  std::vector<Composition> out;
  std::vector<Int> parts;
  const auto rec = [&](auto&& self, Int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (Int part = 1; part <= remaining; ++part) {
      parts.push_back(part);
      self(self, remaining - part);
      parts.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

}  // namespace tests

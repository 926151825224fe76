#pragma once

// Exact rational scalars shared by every module. boost::rational keeps values
// in lowest terms with a positive denominator, which is the canonical form the
// comparison routines rely on. No floating point anywhere.

#include <boost/rational.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hnstrat {

using Int = long long;
using Rat = boost::rational<Int>;
using RatVec = std::vector<Rat>;

// Violated precondition of a library operation. The CLI maps this to exit 3.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_rat(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + '/' + std::to_string(r.denominator());
}

// Accepts "p" and "p/q" with optional sign on p; q > 0 after normalization.
inline Rat parse_rat(const std::string& text) {
  const auto bad = [&] { return DomainError("malformed rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  const auto parse_int = [&](const std::string& part) {
    if (part.empty()) throw bad();
    std::size_t pos = 0;
    Int value = 0;
    try {
      value = std::stoll(part, &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != part.size()) throw bad();
    return value;
  };
  if (slash == std::string::npos) return Rat(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw bad();
  return Rat(num, den);
}

inline Rat vec_sum(const RatVec& v) {
  return std::accumulate(v.begin(), v.end(), Rat(0));
}

inline Int rat_floor(const Rat& r) {
  Int q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

// Largest integer strictly below r.
inline Int strict_floor(const Rat& r) {
  const Int f = rat_floor(r);
  return Rat(f) == r ? f - 1 : f;
}

inline bool weakly_decreasing(const RatVec& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] < v[i]) return false;
  return true;
}

inline RatVec to_ratvec(const std::vector<Int>& v) {
  RatVec out;
  out.reserve(v.size());
  for (Int x : v) out.emplace_back(x);
  return out;
}

inline std::string format_ratvec(const RatVec& v, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_rat(v[i]);
  }
  return out;
}

}  // namespace hnstrat

#pragma once

// Type-A root-datum combinatorics: dominance orders on slope vectors,
// rho-pairings, the Weyl group S_n as permutations, compositions (parabolic
// types) and the pi_1 bookkeeping maps sharp_M / av_M.

#include <hnstrat/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hnstrat {

// Integer cocharacter of the diagonal torus of GL_n.
struct Cocharacter {
  std::vector<Int> entries;

  Cocharacter() = default;
  explicit Cocharacter(std::vector<Int> e) : entries(std::move(e)) {}

  std::size_t size() const { return entries.size(); }
  Int sum() const { return std::accumulate(entries.begin(), entries.end(), Int(0)); }
  bool is_dominant() const {
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i - 1] < entries[i]) return false;
    return true;
  }
  Cocharacter sorted_desc() const {
    Cocharacter out = *this;
    std::sort(out.entries.begin(), out.entries.end(), std::greater<Int>());
    return out;
  }
  // Minuscule: all entries take at most two consecutive integer values.
  bool is_minuscule() const {
    if (entries.empty()) return true;
    const auto [lo, hi] = std::minmax_element(entries.begin(), entries.end());
    return *hi - *lo <= 1;
  }
  RatVec rational() const { return to_ratvec(entries); }
  bool operator==(const Cocharacter& o) const { return entries == o.entries; }
};

// Block structure (n_1,...,n_r) of a standard parabolic / Levi subgroup.
struct Composition {
  std::vector<Int> parts;

  Composition() = default;
  explicit Composition(std::vector<Int> p) : parts(std::move(p)) {
    for (Int x : parts)
      if (x < 1) throw DomainError("composition parts must be positive");
  }

  Int total() const { return std::accumulate(parts.begin(), parts.end(), Int(0)); }
  std::size_t block_count() const { return parts.size(); }
  bool is_proper() const { return parts.size() >= 2; }

  // Interior block boundaries: cumulative sums excluding the final total.
  std::vector<Int> boundaries() const {
    std::vector<Int> out;
    Int acc = 0;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      acc += parts[i];
      out.push_back(acc);
    }
    return out;
  }

  // True when every block of *this is a union of consecutive blocks of finer.
  bool coarsens(const Composition& finer) const {
    if (total() != finer.total()) return false;
    const auto mine = boundaries();
    const auto theirs = finer.boundaries();
    return std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end());
  }

  static Composition from_boundaries(Int n, const std::vector<Int>& interior) {
    std::vector<Int> parts;
    Int prev = 0;
    for (Int b : interior) {
      if (b <= prev || b >= n) throw DomainError("invalid interior boundary");
      parts.push_back(b - prev);
      prev = b;
    }
    parts.push_back(n - prev);
    return Composition(std::move(parts));
  }

  bool operator==(const Composition& o) const { return parts == o.parts; }
  bool operator<(const Composition& o) const { return parts < o.parts; }
};

// Element of W = S_n in one-line notation, 0-based internally: i -> images[i].
// Acts on vectors by permuting places: (w.v)[w(i)] = v[i].
struct WeylElement {
  std::vector<int> images;

  WeylElement() = default;
  explicit WeylElement(std::vector<int> im) : images(std::move(im)) {}

  int n() const { return static_cast<int>(images.size()); }

  static WeylElement identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
    return WeylElement(std::move(im));
  }

  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (images[static_cast<std::size_t>(i)] != i) return false;
    return true;
  }

  WeylElement inverse() const {
    std::vector<int> inv(images.size());
    for (int i = 0; i < n(); ++i) inv[static_cast<std::size_t>(images[static_cast<std::size_t>(i)])] = i;
    return WeylElement(std::move(inv));
  }

  Int length() const {  // inversion count
    Int count = 0;
    for (std::size_t i = 0; i < images.size(); ++i)
      for (std::size_t j = i + 1; j < images.size(); ++j)
        if (images[i] > images[j]) ++count;
    return count;
  }

  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(images[i])] = v[i];
    return out;
  }

  std::string one_line() const {  // 1-based, for display
    std::string out;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(images[i] + 1);
    }
    return out;
  }

  bool operator==(const WeylElement& o) const { return images == o.images; }
  bool operator<(const WeylElement& o) const { return images < o.images; }
};

namespace detail {
inline void check_same_length(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DomainError("vector length mismatch");
  if (a.empty()) throw DomainError("empty vector");
}
}  // namespace detail

// Partial sums of a are <= those of b and the totals agree. No sortedness
// requirement: this is the order "b - a is a non-negative combination of
// positive coroots".
inline bool coroot_order(const RatVec& a, const RatVec& b) {
  detail::check_same_length(a, b);
  Rat pa(0), pb(0);
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    pa += a[i];
    pb += b[i];
    if (pa > pb) return false;
  }
  pa += a.back();
  pb += b.back();
  return pa == pb;
}

// Dominance order on weakly decreasing vectors (errors on unsorted input; use
// coroot_order for raw vectors).
inline bool dominance_leq(const RatVec& a, const RatVec& b) {
  detail::check_same_length(a, b);
  if (!weakly_decreasing(a) || !weakly_decreasing(b))
    throw DomainError("dominance_leq requires weakly decreasing inputs");
  return coroot_order(a, b);
}

inline RatVec rho(std::size_t n) {
  RatVec out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(Rat(static_cast<Int>(n) - 1 - 2 * static_cast<Int>(i), 2));
  return out;
}

// <rho, v> (scale 1) or <2 rho, v> (scale 2), exactly.
inline Rat rho_pairing(const RatVec& v, int scale) {
  if (scale != 1 && scale != 2) throw DomainError("rho_pairing scale must be 1 or 2");
  const RatVec r = rho(v.size());
  Rat out(0);
  for (std::size_t i = 0; i < v.size(); ++i) out += r[i] * v[i];
  return out * scale;
}

inline Rat rho_pairing(const Cocharacter& v, int scale) { return rho_pairing(v.rational(), scale); }

// Minimal-length w with w(mu_dominant) = pattern, together with its length.
// Equal values keep their relative order (stable matching), which realizes the
// minimum inversion count over all permutations mapping mu to the pattern.
inline std::pair<WeylElement, Int> min_length_weyl(const Cocharacter& mu_dominant,
                                                   const Cocharacter& pattern) {
  if (!mu_dominant.is_dominant()) throw DomainError("min_length_weyl: mu must be dominant");
  if (mu_dominant.size() != pattern.size()) throw DomainError("min_length_weyl: length mismatch");
  Cocharacter check = pattern.sorted_desc();
  if (!(check == mu_dominant)) throw DomainError("min_length_weyl: pattern is not a rearrangement of mu");

  const std::size_t n = mu_dominant.size();
  std::map<Int, std::vector<std::size_t>> mu_positions;  // value -> source indices, increasing
  for (std::size_t j = 0; j < n; ++j) mu_positions[mu_dominant.entries[j]].push_back(j);
  std::map<Int, std::size_t> next_use;

  std::vector<int> images(n);
  for (std::size_t i = 0; i < n; ++i) {  // pattern positions in increasing order
    const Int value = pattern.entries[i];
    const std::size_t j = mu_positions[value][next_use[value]++];
    images[j] = static_cast<int>(i);  // w(j) = i moves mu[j] to position i
  }
  WeylElement w{std::move(images)};
  return {w, w.length()};
}

// Blockwise sums: the image of lam in pi_1(M) = Z^r for M of type M.
inline std::vector<Int> sharp_M(const Cocharacter& lam, const Composition& M) {
  if (static_cast<Int>(lam.size()) != M.total()) throw DomainError("sharp_M: length mismatch");
  std::vector<Int> out;
  out.reserve(M.parts.size());
  std::size_t pos = 0;
  for (Int part : M.parts) {
    Int acc = 0;
    for (Int k = 0; k < part; ++k) acc += lam.entries[pos++];
    out.push_back(acc);
  }
  return out;
}

// Central projection: constant per block, block value = block average.
inline RatVec av_M(const RatVec& lam, const Composition& M) {
  if (static_cast<Int>(lam.size()) != M.total()) throw DomainError("av_M: length mismatch");
  RatVec out;
  out.reserve(lam.size());
  std::size_t pos = 0;
  for (Int part : M.parts) {
    Rat acc(0);
    for (Int k = 0; k < part; ++k) acc += lam[pos + static_cast<std::size_t>(k)];
    const Rat value = acc / part;
    for (Int k = 0; k < part; ++k) out.push_back(value);
    pos += static_cast<std::size_t>(part);
  }
  return out;
}

inline RatVec av_M(const Cocharacter& lam, const Composition& M) { return av_M(lam.rational(), M); }

namespace detail {

// Enumerate non-negative integer matrices with prescribed row and column sums.
inline void fill_matrices(const std::vector<Int>& rows, const std::vector<Int>& cols,
                          std::size_t idx, std::vector<Int>& rowLeft, std::vector<Int>& colLeft,
                          std::vector<std::vector<Int>>& cell,
                          std::vector<std::vector<std::vector<Int>>>& out) {
  const std::size_t r = rows.size(), c = cols.size();
  if (idx == r * c) {
    out.push_back(cell);
    return;
  }
  const std::size_t i = idx / c, j = idx % c;
  // Remaining capacity of row i beyond column j must absorb what is left.
  Int laterRow = 0;
  for (std::size_t jj = j + 1; jj < c; ++jj) laterRow += colLeft[jj] < rowLeft[i] ? colLeft[jj] : rowLeft[i];
  const Int lo = (i + 1 == r) ? colLeft[j] : std::max<Int>(0, rowLeft[i] - laterRow);
  const Int hi = std::min(rowLeft[i], colLeft[j]);
  for (Int v = lo; v <= hi; ++v) {
    cell[i][j] = v;
    rowLeft[i] -= v;
    colLeft[j] -= v;
    if (!(i + 1 == r && colLeft[j] != 0))  // last row must exhaust each column
      fill_matrices(rows, cols, idx + 1, rowLeft, colLeft, cell, out);
    rowLeft[i] += v;
    colLeft[j] += v;
    cell[i][j] = 0;
  }
}

}  // namespace detail

// Minimal-length (W_{M1}, W_{M2})-double-coset representatives. Double cosets
// biject with non-negative integer matrices whose row sums are the M1 parts and
// column sums the M2 parts; the matrix (a_kl) yields the unique representative
// that is increasing on M2 position-blocks with inverse increasing on M1
// value-blocks. Returned sorted lexicographically.
inline std::vector<WeylElement> double_coset_min_reps(const Composition& M1, const Composition& M2) {
  if (M1.total() != M2.total()) throw DomainError("double_coset_min_reps: mismatched n");
  const std::size_t n = static_cast<std::size_t>(M1.total());
  const std::size_t r = M1.parts.size(), c = M2.parts.size();

  std::vector<std::vector<std::vector<Int>>> matrices;
  std::vector<std::vector<Int>> cell(r, std::vector<Int>(c, 0));
  std::vector<Int> rowLeft = M1.parts, colLeft = M2.parts;
  detail::fill_matrices(M1.parts, M2.parts, 0, rowLeft, colLeft, cell, matrices);

  // Starting value of each M1 block.
  std::vector<Int> blockStart(r, 0);
  for (std::size_t k = 1; k < r; ++k) blockStart[k] = blockStart[k - 1] + M1.parts[k - 1];

  std::vector<WeylElement> out;
  out.reserve(matrices.size());
  for (const auto& A : matrices) {
    std::vector<Int> nextValue = blockStart;
    std::vector<int> images;
    images.reserve(n);
    for (std::size_t l = 0; l < c; ++l)
      for (std::size_t k = 0; k < r; ++k)
        for (Int t = 0; t < A[k][l]; ++t) images.push_back(static_cast<int>(nextValue[k]++));
    out.emplace_back(std::move(images));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hnstrat

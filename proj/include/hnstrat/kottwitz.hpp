#pragma once

// Newton points with isocrystal integrality, the sets B(G,mu) and B(G,mu,b),
// basic elements, duality, and the Levi types allowed on an inner form.

#include <hnstrat/rational.hpp>
#include <hnstrat/rootdata.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace hnstrat {

// Weakly decreasing rational slope vector; every maximal run of a slope d/h in
// lowest terms has length a positive multiple of h, i.e. the polygon of the
// vector has integral breakpoints.
struct NewtonPoint {
  RatVec slopes;

  NewtonPoint() = default;
  explicit NewtonPoint(RatVec s) : slopes(std::move(s)) {}

  std::size_t size() const { return slopes.size(); }

  bool valid() const {
    if (slopes.empty() || !weakly_decreasing(slopes)) return false;
    std::size_t i = 0;
    while (i < slopes.size()) {
      std::size_t j = i;
      while (j < slopes.size() && slopes[j] == slopes[i]) ++j;
      if ((j - i) % static_cast<std::size_t>(slopes[i].denominator()) != 0) return false;
      i = j;
    }
    return true;
  }

  void require_valid() const {
    if (!valid()) throw DomainError("invalid NewtonPoint: " + format_ratvec(slopes));
  }

  bool is_basic() const {
    return !slopes.empty() &&
           std::all_of(slopes.begin(), slopes.end(), [&](const Rat& s) { return s == slopes.front(); });
  }

  bool operator==(const NewtonPoint& o) const { return slopes == o.slopes; }
  bool operator<(const NewtonPoint& o) const { return slopes < o.slopes; }  // lexicographic
};

// G = GL_n (twist_degree 0) or the inner form G_b for b basic of slope
// twist_degree / n.
struct GroupDatum {
  Int n = 1;
  Int twist_degree = 0;
};

// Dieudonne-Manin block data: simple summands of slope d/h, gcd(d,h) = 1.
struct IsocrystalBlocks {
  struct Block {
    Int d = 0;
    Int h = 1;
  };
  std::vector<Block> blocks;

  Int rank() const {
    return std::accumulate(blocks.begin(), blocks.end(), Int(0),
                           [](Int acc, const Block& b) { return acc + b.h; });
  }
  Int degree() const {
    return std::accumulate(blocks.begin(), blocks.end(), Int(0),
                           [](Int acc, const Block& b) { return acc + b.d; });
  }
  void require_valid() const {
    if (blocks.empty()) throw DomainError("isocrystal needs at least one block");
    for (const auto& b : blocks) {
      if (b.h < 1) throw DomainError("isocrystal block height must be positive");
      if (std::gcd(b.d, b.h) != 1) throw DomainError("isocrystal block slope not in lowest terms");
    }
  }
  bool is_basic() const {
    for (const auto& b : blocks)
      if (Rat(b.d, b.h) != Rat(blocks.front().d, blocks.front().h)) return false;
    return true;
  }
  NewtonPoint newton() const {
    RatVec s;
    for (const auto& b : blocks) s.insert(s.end(), static_cast<std::size_t>(b.h), Rat(b.d, b.h));
    std::sort(s.begin(), s.end(), std::greater<Rat>());
    return NewtonPoint(std::move(s));
  }
};

// kappa = degree = sum of slopes, integral by the integrality invariant.
inline Int kappa(const NewtonPoint& nu) {
  nu.require_valid();
  const Rat total = vec_sum(nu.slopes);
  if (total.denominator() != 1) throw DomainError("corrupt NewtonPoint: non-integral total");
  return total.numerator();
}

inline NewtonPoint basic_element(const GroupDatum& G, const Cocharacter& mu) {
  return NewtonPoint(RatVec(static_cast<std::size_t>(G.n), Rat(mu.sum(), G.n)));
}

inline NewtonPoint dual_class(const NewtonPoint& nu) {
  RatVec s;
  s.reserve(nu.slopes.size());
  for (auto it = nu.slopes.rbegin(); it != nu.slopes.rend(); ++it) s.push_back(-*it);
  return NewtonPoint(std::move(s));
}

// Maximal runs of equal slopes; the block structure of the centralizer Levi.
inline Composition centralizer_composition(const NewtonPoint& nu) {
  std::vector<Int> parts;
  std::size_t i = 0;
  while (i < nu.slopes.size()) {
    std::size_t j = i;
    while (j < nu.slopes.size() && nu.slopes[j] == nu.slopes[i]) ++j;
    parts.push_back(static_cast<Int>(j - i));
    i = j;
  }
  return Composition(std::move(parts));
}

namespace detail {

// DFS over concave lattice paths from (0,0) to (n, total) with integral
// breakpoints and strictly decreasing segment slopes, staying weakly below the
// bound polygon (given by its partial sums at the integer abscissae 1..n).
// Both the path and the bound are concave, so the constraint holds everywhere
// once it holds at the breakpoints.
inline void newton_paths(Int n, const Rat& total, const RatVec& boundPartial, Int rank, Int deg,
                         bool haveSlope, const Rat& lastSlope, RatVec& slopes,
                         std::vector<NewtonPoint>& out) {
  if (rank == n) {
    if (Rat(deg) == total) out.emplace_back(slopes);
    return;
  }
  for (Int step = 1; step + rank <= n; ++step) {
    // Next integral breakpoint (rank + step, deg + rise). Later segments are
    // strictly flatter, so reaching the total forces
    // rise >= (total - deg) * step / (n - rank); the bound polygon and the
    // previous slope cap the rise from above.
    const Int lo = rat_ceil((total - Rat(deg)) * Rat(step, n - rank));
    Int hi = rat_floor(boundPartial[static_cast<std::size_t>(rank + step - 1)] - Rat(deg));
    if (haveSlope) hi = std::min(hi, strict_floor(lastSlope * step));
    for (Int rise = lo; rise <= hi; ++rise) {
      const Rat slope(rise, step);
      slopes.insert(slopes.end(), static_cast<std::size_t>(step), slope);
      newton_paths(n, total, boundPartial, rank + step, deg + rise, true, slope, slopes, out);
      slopes.resize(slopes.size() - static_cast<std::size_t>(step));
    }
  }
}

}  // namespace detail

// All Newton points nu with sum(nu) = total and nu <= bound in dominance,
// where bound is weakly decreasing of length n. Sorted descending-lex.
inline std::vector<NewtonPoint> enumerate_newton_below(Int n, const RatVec& bound) {
  if (static_cast<Int>(bound.size()) != n || !weakly_decreasing(bound))
    throw DomainError("enumerate_newton_below: bound must be weakly decreasing of length n");
  RatVec boundPartial;
  Rat acc(0);
  for (const Rat& x : bound) {
    acc += x;
    boundPartial.push_back(acc);
  }
  std::vector<NewtonPoint> out;
  RatVec slopes;
  detail::newton_paths(n, boundPartial.back(), boundPartial, 0, 0, false, Rat(0), slopes, out);
  std::sort(out.begin(), out.end(),
            [](const NewtonPoint& a, const NewtonPoint& b) { return b.slopes < a.slopes; });
  return out;
}

// B(G,mu): Newton points with kappa = sum(mu) dominated by mu_dom. Identical
// for split G and its inner forms.
inline std::vector<NewtonPoint> enumerate_B(const GroupDatum& G, const Cocharacter& mu) {
  if (static_cast<Int>(mu.size()) != G.n) throw DomainError("enumerate_B: length of mu must be n");
  return enumerate_newton_below(G.n, mu.sorted_desc().rational());
}

// B(G,mu,b) for basic b: possible Newton points of modifications of the bundle
// attached to b along mu, i.e. sum = deg(b) + sum(mu) and nu <= nu_b + mu_dom.
inline std::vector<NewtonPoint> enumerate_B_mu_b(const GroupDatum& G, const Cocharacter& mu,
                                                 const IsocrystalBlocks& b) {
  b.require_valid();
  if (!b.is_basic()) throw DomainError("enumerate_B_mu_b: non-basic b is unsupported");
  if (b.rank() != G.n || static_cast<Int>(mu.size()) != G.n)
    throw DomainError("enumerate_B_mu_b: rank mismatch");
  const Rat nuB(b.blocks.front().d, b.blocks.front().h);
  RatVec bound = mu.sorted_desc().rational();
  for (Rat& x : bound) x += nuB;
  return enumerate_newton_below(G.n, bound);
}

// Compositions (n_1,...,n_r) with n_i * twist_degree / n integral: the block
// types of parabolic subgroups existing on the inner form. Lexicographic order.
inline std::vector<Composition> allowed_levis(const GroupDatum& G) {
  std::vector<Composition> out;
  std::vector<Int> parts;
  const auto admissible = [&](Int part) { return (part * G.twist_degree) % G.n == 0; };
  const auto rec = [&](auto&& self, Int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (Int part = 1; part <= remaining; ++part) {
      if (!admissible(part)) continue;
      parts.push_back(part);
      self(self, remaining - part);
      parts.pop_back();
    }
  };
  rec(rec, G.n);
  return out;
}

}  // namespace hnstrat

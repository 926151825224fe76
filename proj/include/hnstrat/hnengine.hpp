#pragma once

// Generic Harder-Narasimhan formalism on finite subobject lattices, plus the
// concrete instantiations used downstream: block-scalar modifications of
// bundles and rational filtered vector spaces.

#include <hnstrat/rational.hpp>
#include <hnstrat/rootdata.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace hnstrat {

// Piecewise-linear graph through (rank, degree) breakpoints, anchored at
// (0,0), rank strictly increasing. Canonical form merges collinear segments;
// an HN polygon additionally has strictly decreasing segment slopes.
struct Polygon {
  std::vector<std::pair<Int, Rat>> vertices;

  Polygon() = default;

  static Polygon from_breakpoints(std::vector<std::pair<Int, Rat>> points) {
    if (points.empty() || points.front() != std::make_pair(Int(0), Rat(0)))
      throw DomainError("polygon must start at (0,0)");
    for (std::size_t i = 1; i < points.size(); ++i)
      if (points[i].first <= points[i - 1].first)
        throw DomainError("polygon ranks must strictly increase");
    Polygon p;
    p.vertices.push_back(points.front());
    for (std::size_t i = 1; i < points.size(); ++i) {
      // Drop the middle point of any collinear triple.
      while (p.vertices.size() >= 2) {
        const auto& a = p.vertices[p.vertices.size() - 2];
        const auto& b = p.vertices.back();
        const auto& c = points[i];
        if ((b.second - a.second) * (c.first - b.first) ==
            (c.second - b.second) * (b.first - a.first))
          p.vertices.pop_back();
        else
          break;
      }
      p.vertices.push_back(points[i]);
    }
    return p;
  }

  // Polygon of a weakly decreasing slope vector.
  static Polygon from_slopes(const RatVec& slopes) {
    if (slopes.empty()) throw DomainError("polygon needs at least one slope");
    if (!weakly_decreasing(slopes)) throw DomainError("slopes must be weakly decreasing");
    std::vector<std::pair<Int, Rat>> points{{0, Rat(0)}};
    Rat acc(0);
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      acc += slopes[i];
      if (i + 1 == slopes.size() || slopes[i + 1] != slopes[i])
        points.emplace_back(static_cast<Int>(i) + 1, acc);
    }
    return from_breakpoints(std::move(points));
  }

  Int total_rank() const { return vertices.back().first; }
  Rat total_degree() const { return vertices.back().second; }

  Rat value_at(Int r) const {
    if (r < 0 || r > total_rank()) throw DomainError("polygon evaluated outside [0, rank]");
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if (r <= vertices[i].first) {
        const auto& [r0, d0] = vertices[i - 1];
        const auto& [r1, d1] = vertices[i];
        return d0 + (d1 - d0) * Rat(r - r0, r1 - r0);
      }
    }
    return vertices.front().second;  // r == 0
  }

  RatVec unit_slopes() const {
    RatVec out;
    out.reserve(static_cast<std::size_t>(total_rank()));
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      const Rat slope =
          (vertices[i].second - vertices[i - 1].second) / (vertices[i].first - vertices[i - 1].first);
      out.insert(out.end(), static_cast<std::size_t>(vertices[i].first - vertices[i - 1].first), slope);
    }
    return out;
  }

  bool concave_strict() const {  // strictly decreasing segment slopes
    for (std::size_t i = 2; i < vertices.size(); ++i) {
      const Rat s0 = (vertices[i - 1].second - vertices[i - 2].second) /
                     (vertices[i - 1].first - vertices[i - 2].first);
      const Rat s1 =
          (vertices[i].second - vertices[i - 1].second) / (vertices[i].first - vertices[i - 1].first);
      if (!(s1 < s0)) return false;
    }
    return true;
  }

  // Pointwise comparison as functions on [0, rank]. All breakpoints are at
  // integer abscissae, so checking each polygon's vertices suffices.
  bool leq(const Polygon& other) const {
    if (total_rank() != other.total_rank()) throw DomainError("polygon rank mismatch");
    for (const auto& [r, d] : vertices)
      if (d > other.value_at(r)) return false;
    for (const auto& [r, d] : other.vertices)
      if (value_at(r) > d) return false;
    return true;
  }

  bool operator==(const Polygon& o) const { return vertices == o.vertices; }
};

// Finite poset of strict subobjects labeled (rank, degree), with bottom and
// top. The order relation is stored reflexively and transitively closed.
struct SubobjectLattice {
  struct Element {
    Int rank = 0;
    Int deg = 0;
  };
  std::vector<Element> elements;
  std::vector<std::vector<char>> leq;
  int bottom = -1;
  int top = -1;

  // Build from generating relations (transitive closure is taken here).
  static SubobjectLattice from_relations(std::vector<Element> elements,
                                         const std::vector<std::pair<int, int>>& below) {
    SubobjectLattice L;
    L.elements = std::move(elements);
    const std::size_t m = L.elements.size();
    L.leq.assign(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i) L.leq[i][i] = 1;
    for (const auto& [a, b] : below) {
      if (a < 0 || b < 0 || a >= static_cast<int>(m) || b >= static_cast<int>(m))
        throw DomainError("relation index out of range");
      L.leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
    }
    for (std::size_t k = 0; k < m; ++k)  // Floyd-Warshall closure
      for (std::size_t i = 0; i < m; ++i)
        if (L.leq[i][k])
          for (std::size_t j = 0; j < m; ++j)
            if (L.leq[k][j]) L.leq[i][j] = 1;
    L.finalize();
    return L;
  }

  // Locate bottom/top and check the lattice invariants.
  void finalize() {
    const std::size_t m = elements.size();
    if (m == 0) throw DomainError("empty lattice");
    if (leq.size() != m) throw DomainError("order matrix size mismatch");
    for (const auto& row : leq)
      if (row.size() != m) throw DomainError("order matrix size mismatch");
    for (std::size_t i = 0; i < m; ++i) {
      if (!leq[i][i]) throw DomainError("order not reflexive");
      for (std::size_t j = 0; j < m; ++j) {
        if (i != j && leq[i][j] && leq[j][i]) throw DomainError("order not antisymmetric");
        for (std::size_t k = 0; leq[i][j] && k < m; ++k)
          if (leq[j][k] && !leq[i][k]) throw DomainError("order not transitive");
      }
    }
    bottom = top = -1;
    for (std::size_t i = 0; i < m; ++i) {
      bool isBottom = true, isTop = true;
      for (std::size_t j = 0; j < m; ++j) {
        isBottom = isBottom && leq[i][j];
        isTop = isTop && leq[j][i];
      }
      if (isBottom) bottom = static_cast<int>(i);
      if (isTop) top = static_cast<int>(i);
    }
    if (bottom < 0 || top < 0) throw DomainError("lattice needs bottom and top");
    if (elements[static_cast<std::size_t>(bottom)].rank != 0 ||
        elements[static_cast<std::size_t>(bottom)].deg != 0)
      throw DomainError("bottom must be labeled (0,0)");
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && leq[i][j] && elements[i].rank >= elements[j].rank)
          throw DomainError("rank must strictly increase along the strict order");
  }

  std::size_t size() const { return elements.size(); }
};

// Upper concave envelope of all (rank, degree) points, anchored at bottom and
// top.
inline Polygon hn_polygon_lattice(const SubobjectLattice& L) {
  const Int n = L.elements[static_cast<std::size_t>(L.top)].rank;
  std::vector<std::pair<Int, Int>> best;  // per occurring rank: max degree
  {
    std::vector<std::pair<Int, Int>> pts;
    pts.reserve(L.size());
    for (const auto& e : L.elements) pts.emplace_back(e.rank, e.deg);
    std::sort(pts.begin(), pts.end());
    for (const auto& p : pts) {
      if (!best.empty() && best.back().first == p.first)
        best.back().second = std::max(best.back().second, p.second);
      else
        best.push_back(p);
    }
  }
  // Monotone-chain upper hull over exact integer coordinates.
  std::vector<std::pair<Int, Int>> hull;
  for (const auto& p : best) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Keep b only if it lies strictly above segment a--p.
      if ((b.second - a.second) * (p.first - a.first) <=
          (p.second - a.second) * (b.first - a.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  std::vector<std::pair<Int, Rat>> points;
  points.reserve(hull.size());
  for (const auto& [r, d] : hull) points.emplace_back(r, Rat(d));
  Polygon out = Polygon::from_breakpoints(std::move(points));
  if (out.total_rank() != n) throw DomainError("lattice envelope does not reach the top rank");
  return out;
}

// Two incomparable subobjects tie for (max slope, max rank): the lattice does
// not satisfy the HN-formalism axioms.
struct AmbiguousMaximizer : DomainError {
  using DomainError::DomainError;
};

// Chain of envelope-achieving elements: from bottom, repeatedly move to the
// subobject above the current one maximizing the quotient slope, ties broken
// by maximal rank; a residual tie is ambiguous.
inline std::vector<int> hn_filtration_lattice(const SubobjectLattice& L) {
  std::vector<int> chain{L.bottom};
  int cur = L.bottom;
  while (cur != L.top) {
    const auto& base = L.elements[static_cast<std::size_t>(cur)];
    int pick = -1;
    Rat pickSlope(0);
    bool tie = false;
    for (std::size_t e = 0; e < L.size(); ++e) {
      if (static_cast<int>(e) == cur || !L.leq[static_cast<std::size_t>(cur)][e]) continue;
      const Rat slope(L.elements[e].deg - base.deg, L.elements[e].rank - base.rank);
      if (pick < 0 || slope > pickSlope ||
          (slope == pickSlope &&
           L.elements[e].rank > L.elements[static_cast<std::size_t>(pick)].rank)) {
        pick = static_cast<int>(e);
        pickSlope = slope;
        tie = false;
      } else if (slope == pickSlope &&
                 L.elements[e].rank == L.elements[static_cast<std::size_t>(pick)].rank) {
        tie = true;
      }
    }
    if (tie)
      throw AmbiguousMaximizer("two incomparable subobjects tie for (max slope, max rank)");
    chain.push_back(pick);
    cur = pick;
  }
  // Quotient slopes must be strictly decreasing for a genuine HN filtration.
  for (std::size_t i = 2; i < chain.size(); ++i) {
    const auto& a = L.elements[static_cast<std::size_t>(chain[i - 2])];
    const auto& b = L.elements[static_cast<std::size_t>(chain[i - 1])];
    const auto& c = L.elements[static_cast<std::size_t>(chain[i])];
    const Rat s0(b.deg - a.deg, b.rank - a.rank);
    const Rat s1(c.deg - b.deg, c.rank - b.rank);
    if (!(s1 < s0))
      throw DomainError("lattice violates the HN axioms: quotient slopes not strictly decreasing");
  }
  return chain;
}

enum class FiltrationVerdict { Below, EqualRefinement };

// Compare the polygon of a chain (bottom to top) against the lattice HN
// polygon. The chain polygon can never exceed the envelope; the verdict is
// Below (strictly somewhere) or EqualRefinement.
inline FiltrationVerdict compare_filtration(const SubobjectLattice& L, const std::vector<int>& chain) {
  if (chain.empty() || chain.front() != L.bottom || chain.back() != L.top)
    throw DomainError("chain must run from bottom to top");
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const int a = chain[i - 1], b = chain[i];
    if (a < 0 || b < 0 || a >= static_cast<int>(L.size()) || b >= static_cast<int>(L.size()) ||
        a == b || !L.leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
      throw DomainError("not a strictly increasing chain in the lattice");
  }
  std::vector<std::pair<Int, Rat>> points;
  points.reserve(chain.size());
  for (int e : chain)
    points.emplace_back(L.elements[static_cast<std::size_t>(e)].rank,
                        Rat(L.elements[static_cast<std::size_t>(e)].deg));
  const Polygon pf = Polygon::from_breakpoints(std::move(points));
  const Polygon hn = hn_polygon_lattice(L);
  if (!pf.leq(hn)) throw DomainError("chain polygon exceeds the HN envelope (corrupt lattice)");
  if (pf == hn) {
    // Every envelope vertex must be realized by a chain element.
    for (const auto& [r, d] : hn.vertices) {
      bool found = false;
      for (int e : chain)
        found = found || (L.elements[static_cast<std::size_t>(e)].rank == r &&
                          Rat(L.elements[static_cast<std::size_t>(e)].deg) == d);
      if (!found) throw DomainError("equal polygon but an HN vertex is missing from the chain");
    }
    return FiltrationVerdict::EqualRefinement;
  }
  return FiltrationVerdict::Below;
}

// Simple summand O(d/h) of a bundle, modified by a scalar twist of degree a on
// that block.
struct ModificationInstance {
  struct Block {
    Int d = 0;
    Int h = 1;
    Int a = 0;
  };
  std::vector<Block> blocks;

  void require_valid() const {
    if (blocks.empty()) throw DomainError("modification instance needs at least one block");
    for (const auto& b : blocks) {
      if (b.h < 1) throw DomainError("block height must be positive");
      if (std::gcd(b.d, b.h) != 1) throw DomainError("block slope not in lowest terms");
    }
  }
  Int rank() const {
    return std::accumulate(blocks.begin(), blocks.end(), Int(0),
                           [](Int acc, const Block& b) { return acc + b.h; });
  }
  Int degree() const {
    return std::accumulate(blocks.begin(), blocks.end(), Int(0),
                           [](Int acc, const Block& b) { return acc + b.d + b.a * b.h; });
  }
};

inline std::pair<Int, Int> deg_rank(const ModificationInstance& inst) {
  inst.require_valid();
  return {inst.rank(), inst.degree()};
}

// HN polygon of the modified bundle: each block is semistable of slope
// (d + a*h)/h, so the polygon is the descending sort of block slopes with
// multiplicity h.
inline Polygon modification_hn(const ModificationInstance& inst) {
  inst.require_valid();
  RatVec slopes;
  slopes.reserve(static_cast<std::size_t>(inst.rank()));
  for (const auto& b : inst.blocks)
    slopes.insert(slopes.end(), static_cast<std::size_t>(b.h), Rat(b.d + b.a * b.h, b.h));
  std::sort(slopes.begin(), slopes.end(), std::greater<Rat>());
  return Polygon::from_slopes(slopes);
}

// Slope multiset of a tensor product of block-scalar instances: pairwise sums.
inline RatVec tensor_polygon(const RatVec& p, const RatVec& q) {
  if (p.empty() || q.empty()) throw DomainError("tensor_polygon: empty slope multiset");
  RatVec out;
  out.reserve(p.size() * q.size());
  for (const Rat& a : p)
    for (const Rat& b : q) out.push_back(a + b);
  std::sort(out.begin(), out.end(), std::greater<Rat>());
  return out;
}

// Rank of a rational matrix by exact Gaussian elimination.
inline std::size_t matrix_rank(std::vector<RatVec> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  for (const auto& row : m)
    if (row.size() != cols) throw DomainError("ragged matrix");
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == Rat(0)) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col] == Rat(0)) continue;
      const Rat factor = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

// HN polygon of the filtered vector space (V, Fil_g) of the given jump type:
// for a rational flag the filtration itself is the HN filtration, so the
// polygon is the descending sort of the jumps. The matrix only undergoes an
// exact invertibility check here; sampling oracles consume it in tests.
inline Polygon filtered_hn(const std::vector<RatVec>& flag_matrix, const Cocharacter& jumps) {
  const std::size_t n = flag_matrix.size();
  if (n == 0 || jumps.size() != n) throw DomainError("filtered_hn: size mismatch");
  for (const auto& row : flag_matrix)
    if (row.size() != n) throw DomainError("filtered_hn: matrix not square");
  if (matrix_rank(flag_matrix) != n) throw DomainError("filtered_hn: singular matrix");
  return Polygon::from_slopes(jumps.sorted_desc().rational());
}

}  // namespace hnstrat

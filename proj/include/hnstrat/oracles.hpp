#pragma once

// Independent recomputation paths for every derived quantity: brute-force
// enumerations with no shared pruning logic with the main algorithms. Used by
// the test suite and by the CLI --oracle flag, which re-derives results and
// fails loudly on any mismatch.

#include <hnstrat/hnengine.hpp>
#include <hnstrat/kottwitz.hpp>
#include <hnstrat/rational.hpp>
#include <hnstrat/rootdata.hpp>
#include <hnstrat/strata.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hnstrat::oracles {

// Grid enumeration of B(G,mu): multisets of reduced slope blocks (d,h) with
// strictly decreasing slopes, checked against the full dominance definition at
// every index (not only at breakpoints).
inline std::vector<NewtonPoint> enumerate_B(const GroupDatum& G, const Cocharacter& mu) {
  if (static_cast<Int>(mu.size()) != G.n) throw DomainError("mu must have n entries");
  const Cocharacter muDom = mu.sorted_desc();
  const Int n = G.n;
  const Int hiVal = muDom.entries.front();
  const Int loVal = muDom.entries.back();

  std::set<Rat> slopeSet;
  for (Int h = 1; h <= n; ++h)
    for (Int d = loVal * h; d <= hiVal * h; ++d) slopeSet.insert(Rat(d, h));
  const std::vector<Rat> slopes(slopeSet.rbegin(), slopeSet.rend());

  const Rat target(mu.sum());
  const RatVec bound = muDom.rational();
  std::vector<NewtonPoint> out;
  RatVec acc;

  const auto rec = [&](auto&& self, std::size_t idx, Int remaining, Rat deg) -> void {
    if (remaining == 0) {
      if (deg != target) return;
      for (std::size_t i = 0; i < acc.size(); ++i) {
        Rat pa(0), pb(0);
        for (std::size_t k = 0; k <= i; ++k) {
          pa += acc[k];
          pb += bound[k];
        }
        if (pa > pb) return;
      }
      out.emplace_back(acc);
      return;
    }
    for (std::size_t i = idx; i < slopes.size(); ++i) {
      const Rat s = slopes[i];
      if (deg + s * remaining < target) break;  // slopes only get smaller
      const Int h = s.denominator();
      for (Int copies = h; copies <= remaining; copies += h) {
        if (deg + s * copies + Rat(loVal) * (remaining - copies) > target) continue;
        acc.insert(acc.end(), static_cast<std::size_t>(copies), s);
        self(self, i + 1, remaining - copies, deg + s * copies);
        acc.resize(acc.size() - static_cast<std::size_t>(copies));
      }
    }
  };
  rec(rec, 0, n, Rat(0));
  std::sort(out.begin(), out.end(),
            [](const NewtonPoint& a, const NewtonPoint& b) { return b.slopes < a.slopes; });
  return out;
}

// Full-grid enumeration of Theta(mu,[b']): every integer vector with entries
// in [mu_min, mu_max], filtered by the definition.
inline std::vector<HNType> theta_set(const GroupDatum& G, const Cocharacter& mu,
                                     const NewtonPoint& nu) {
  require_in_B(G, mu, nu);
  const Composition M = centralizer_composition(nu);
  std::vector<HNType> out;
  if (!levi_allowed(G, M)) return out;

  const Cocharacter muDom = mu.sorted_desc();
  const Int hiVal = muDom.entries.front();
  const Int loVal = muDom.entries.back();
  const std::size_t n = mu.size();

  RatVec blockTargets;  // n_i * nu_i per block
  for (std::size_t i = 0; i < M.parts.size(); ++i) blockTargets.push_back(Rat(0));
  {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < M.parts.size(); ++i) {
      blockTargets[i] = nu.slopes[pos] * M.parts[i];
      pos += static_cast<std::size_t>(M.parts[i]);
    }
  }

  std::vector<Int> v(n, loVal);  // candidate -lambda, odometer over the grid
  for (;;) {
    // blockwise weakly decreasing and blockwise sums
    bool ok = true;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < M.parts.size() && ok; ++i) {
      Int sum = 0;
      for (Int k = 0; k < M.parts[i]; ++k) {
        if (k > 0 && v[pos + static_cast<std::size_t>(k) - 1] < v[pos + static_cast<std::size_t>(k)])
          ok = false;
        sum += v[pos + static_cast<std::size_t>(k)];
      }
      if (Rat(sum) != blockTargets[i]) ok = false;
      pos += static_cast<std::size_t>(M.parts[i]);
    }
    if (ok) {
      std::vector<Int> sorted = v;
      std::sort(sorted.begin(), sorted.end(), std::greater<Int>());
      if (coroot_order(to_ratvec(sorted), muDom.rational())) {
        std::vector<Int> lam;
        lam.reserve(n);
        std::size_t p = 0;
        for (Int part : M.parts) {
          for (Int k = part - 1; k >= 0; --k) lam.push_back(-v[p + static_cast<std::size_t>(k)]);
          p += static_cast<std::size_t>(part);
        }
        out.push_back(HNType{M, Cocharacter(std::move(lam))});
      }
    }
    std::size_t i = 0;
    while (i < n && v[i] == hiVal) {
      v[i] = loVal;
      ++i;
    }
    if (i == n) break;
    ++v[i];
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// DOR witnesses: the subset of the grid where -lambda is an exact
// rearrangement of mu.
inline std::vector<HNType> dor_witnesses(const GroupDatum& G, const Cocharacter& mu,
                                         const NewtonPoint& nu) {
  const Cocharacter muDom = mu.sorted_desc();
  std::vector<HNType> out;
  for (const auto& type : oracles::theta_set(G, mu, nu))
    if (type.minus_lambda().sorted_desc() == muDom) out.push_back(type);
  return out;
}

// All permutations of {0,...,n-1} in lexicographic order.
inline std::vector<WeylElement> all_permutations(Int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<WeylElement> out;
  do {
    out.push_back(WeylElement{images});
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Minimal-length Weyl element sending mu_dominant to pattern, by exhausting
// the symmetric group. Also reports how many elements attain the minimum.
inline std::pair<WeylElement, Int> min_length_weyl(const Cocharacter& muDominant,
                                                   const Cocharacter& pattern,
                                                   Int* minimizerCount = nullptr) {
  const Int n = static_cast<Int>(muDominant.size());
  std::optional<std::pair<WeylElement, Int>> best;
  Int count = 0;
  for (const auto& w : all_permutations(n)) {
    if (w.apply(muDominant.entries) != pattern.entries) continue;
    const Int len = w.length();
    if (!best || len < best->second) {
      best = {w, len};
      count = 1;
    } else if (len == best->second) {
      ++count;
    }
  }
  if (!best) throw DomainError("pattern is not a rearrangement of mu");
  if (minimizerCount) *minimizerCount = count;
  return *best;
}

// Minimal-length double coset representatives by exhausting the symmetric
// group and bucketing by the contingency-matrix invariant.
inline std::vector<WeylElement> double_coset_min_reps(const Composition& M1, const Composition& M2) {
  if (M1.total() != M2.total()) throw DomainError("compositions of different totals");
  const Int n = M1.total();
  const auto blockOf = [](const Composition& M, int pos) {
    int blk = 0;
    Int acc = M.parts[0];
    while (pos >= acc) acc += M.parts[static_cast<std::size_t>(++blk)];
    return blk;
  };
  std::map<std::vector<int>, std::pair<WeylElement, Int>> buckets;
  for (const auto& w : all_permutations(n)) {
    // Double-coset invariant: entry (k, l) counts positions in M2-block l
    // whose image lands in M1-block k (M1 acts on values, M2 on positions).
    std::vector<int> sig(static_cast<std::size_t>(M1.block_count() * M2.block_count()), 0);
    for (int p = 0; p < n; ++p) {
      const int k = blockOf(M1, w.images[static_cast<std::size_t>(p)]);
      const int l = blockOf(M2, p);
      ++sig[static_cast<std::size_t>(k * M2.block_count() + l)];
    }
    const Int len = w.length();
    auto it = buckets.find(sig);
    if (it == buckets.end() || len < it->second.second) buckets[sig] = {w, len};
  }
  std::vector<WeylElement> out;
  out.reserve(buckets.size());
  for (const auto& kv : buckets) out.push_back(kv.second.first);
  std::sort(out.begin(), out.end(),
            [](const WeylElement& a, const WeylElement& b) { return a.images < b.images; });
  return out;
}

// Upper concave envelope by fixed-point vertex dropping, starting from the
// per-rank maxima of the point cloud.
inline Polygon upper_envelope(const std::vector<std::pair<Int, Rat>>& points) {
  std::map<Int, Rat> best;
  for (const auto& p : points) {
    auto it = best.find(p.first);
    if (it == best.end() || p.second > it->second) best[p.first] = p.second;
  }
  if (best.empty() || best.begin()->first != 0 || best.begin()->second != Rat(0))
    throw DomainError("point cloud must contain (0,0)");
  std::vector<std::pair<Int, Rat>> verts(best.begin(), best.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 1; i + 1 < verts.size(); ++i) {
      const auto& a = verts[i - 1];
      const auto& b = verts[i];
      const auto& c = verts[i + 1];
      // b strictly below segment a--c
      const Rat lhs = (b.second - a.second) * (c.first - a.first);
      const Rat rhs = (c.second - a.second) * (b.first - a.first);
      if (lhs < rhs) {
        verts.erase(verts.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return Polygon::from_breakpoints(verts);
}

// Subobject lattice of a direct sum: one element per subset of the modified
// summands, ordered by inclusion.
inline SubobjectLattice subset_lattice(const ModificationInstance& inst) {
  inst.require_valid();
  const std::size_t k = inst.blocks.size();
  if (k > 16) throw DomainError("subset lattice limited to 16 summands");
  const std::size_t total = std::size_t{1} << k;
  SubobjectLattice L;
  L.elements.resize(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    Int rank = 0, deg = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (std::size_t{1} << j)) {
        rank += inst.blocks[j].h;
        deg += inst.blocks[j].d + inst.blocks[j].a * inst.blocks[j].h;
      }
    L.elements[mask] = SubobjectLattice::Element{rank, deg};
  }
  L.leq.assign(total, std::vector<char>(total, 0));
  for (std::size_t x = 0; x < total; ++x)
    for (std::size_t y = 0; y < total; ++y)
      if ((x & y) == x) L.leq[x][y] = 1;
  L.finalize();
  return L;
}

// Finest decomposition levi by exhausting all compositions of n.
inline Composition smallest_hnd_levi(const Cocharacter& mu, const NewtonPoint& nu) {
  require_in_B(GroupDatum{static_cast<Int>(mu.size()), 0}, mu, nu);
  const Int n = static_cast<Int>(mu.size());
  const Cocharacter muDom = mu.sorted_desc();
  std::set<Int> cuts;
  for (Int mask = 0; mask < (Int{1} << (n - 1)); ++mask) {
    std::vector<Int> bounds;
    for (Int b = 1; b < n; ++b)
      if (mask & (Int{1} << (b - 1))) bounds.push_back(b);
    if (bounds.empty()) continue;  // (n) is never a decomposition levi
    bool ok = true;
    for (Int b : bounds) {
      Rat pm(0), pn(0);
      for (Int i = 0; i < b; ++i) {
        pm += Rat(muDom.entries[static_cast<std::size_t>(i)]);
        pn += nu.slopes[static_cast<std::size_t>(i)];
      }
      // boundary must be a genuine slope drop and carry zero defect
      if (pm != pn || nu.slopes[static_cast<std::size_t>(b) - 1] == nu.slopes[static_cast<std::size_t>(b)])
        ok = false;
    }
    if (ok)
      for (Int b : bounds) cuts.insert(b);
  }
  if (cuts.empty()) return Composition({n});
  return Composition::from_boundaries(n, std::vector<Int>(cuts.begin(), cuts.end()));
}

// Re-verifies a containment pruner run from first principles: every surviving
// scenario must satisfy all rules, every (levi, split) pair must be accounted
// for exactly once, and kill labels must be justified.
inline void verify_wa(const IsocrystalBlocks& b, const Cocharacter& mu, const NewtonPoint& nuPrime,
                      const WaResult& res) {
  b.require_valid();
  if (!b.is_basic()) throw DomainError("verify_wa: non-basic b");
  const Int n = b.rank();
  const Rat slopeB(b.blocks.front().d, b.blocks.front().h);
  const Rat totalDeg = vec_sum(nuPrime.slopes);
  const GroupDatum G{n, b.degree()};

  std::vector<Int> muSorted = mu.sorted_desc().entries;

  const auto checkScenario = [&](const WaScenario& sc, bool expectSurvive) {
    if (!levi_allowed(G, sc.levi) || !sc.levi.is_proper())
      throw DomainError("verify_wa: scenario levi not a proper allowed levi");
    if (sc.mu_split.size() != sc.levi.parts.size())
      throw DomainError("verify_wa: split shape mismatch");
    std::vector<Int> merged;
    for (std::size_t i = 0; i < sc.mu_split.size(); ++i) {
      if (static_cast<Int>(sc.mu_split[i].size()) != sc.levi.parts[i])
        throw DomainError("verify_wa: split block size mismatch");
      merged.insert(merged.end(), sc.mu_split[i].entries.begin(), sc.mu_split[i].entries.end());
    }
    std::sort(merged.begin(), merged.end(), std::greater<Int>());
    if (merged != muSorted) throw DomainError("verify_wa: split is not a partition of mu");

    // R1
    bool violation = false;
    {
      Rat deg(0);
      Int rank = 0;
      for (std::size_t i = 0; i + 1 < sc.mu_split.size(); ++i) {
        deg += slopeB * sc.levi.parts[i] + Rat(sc.mu_split[i].sum());
        rank += sc.levi.parts[i];
        if (deg * n > totalDeg * rank) violation = true;
      }
    }
    if (expectSurvive) {
      if (!violation) throw DomainError("verify_wa: surviving scenario fails R1");
      if (sc.eta.size() != sc.mu_split.size()) throw DomainError("verify_wa: eta shape mismatch");
      Rat degSum(0);
      RatVec allSlopes = nuPrime.slopes;
      for (std::size_t i = 0; i < sc.eta.size(); ++i) {
        const Int mi = sc.levi.parts[i];
        sc.eta[i].require_valid();
        if (static_cast<Int>(sc.eta[i].size()) != mi)
          throw DomainError("verify_wa: eta block length mismatch");
        RatVec bd = sc.mu_split[i].sorted_desc().rational();
        for (Rat& x : bd) x += slopeB;
        if (!dominance_leq(sc.eta[i].slopes, bd))
          throw DomainError("verify_wa: eta block outside B(M, mu_i, b_i)");
        degSum += vec_sum(sc.eta[i].slopes);
        allSlopes.insert(allSlopes.end(), sc.eta[i].slopes.begin(), sc.eta[i].slopes.end());
      }
      if (degSum != totalDeg) throw DomainError("verify_wa: surviving scenario fails R3");
      // R0 on the forced slope vector
      RatVec reduction;
      for (std::size_t i = 0; i < sc.mu_split.size(); ++i) {
        const Rat blockDeg = slopeB * sc.levi.parts[i] + Rat(sc.mu_split[i].sum());
        reduction.insert(reduction.end(), static_cast<std::size_t>(sc.levi.parts[i]),
                         blockDeg / sc.levi.parts[i]);
      }
      std::sort(reduction.begin(), reduction.end(), std::greater<Rat>());
      if (!dominance_leq(reduction, nuPrime.slopes))
        throw DomainError("verify_wa: surviving scenario fails R0");
      // R2 with the widest threshold sweep
      std::sort(allSlopes.begin(), allSlopes.end(), std::greater<Rat>());
      allSlopes.erase(std::unique(allSlopes.begin(), allSlopes.end()), allSlopes.end());
      for (const Rat& s : allSlopes) {
        Int have = 0;
        for (const auto& e : sc.eta) have += hnstrat::detail::mult_geq(e.slopes, s);
        if (hnstrat::detail::mult_geq(nuPrime.slopes, s) > have)
          throw DomainError("verify_wa: surviving scenario fails R2");
      }
    }
  };

  for (const auto& sc : res.surviving) checkScenario(sc, true);
  for (const auto& sc : res.killed) {
    checkScenario(sc, false);
    if (sc.killed_by != "R0" && sc.killed_by != "R1" && sc.killed_by != "R2")
      throw DomainError("verify_wa: unknown kill label");
  }

  // Every (levi, split) pair appears exactly once across killed + surviving.
  std::map<std::pair<std::vector<Int>, std::vector<std::vector<Int>>>, Int> seen;
  const auto key = [](const WaScenario& sc) {
    std::vector<std::vector<Int>> split;
    for (const auto& c : sc.mu_split) split.push_back(c.entries);
    return std::make_pair(sc.levi.parts, split);
  };
  for (const auto& sc : res.killed) ++seen[key(sc)];
  for (const auto& sc : res.surviving) seen[key(sc)];  // may repeat across eta
  Int expected = 0;
  for (const auto& levi : allowed_levis(G)) {
    if (!levi.is_proper()) continue;
    std::vector<std::pair<Int, Int>> valueCounts;
    for (Int x : muSorted) {
      if (!valueCounts.empty() && valueCounts.back().first == x)
        ++valueCounts.back().second;
      else
        valueCounts.emplace_back(x, 1);
    }
    std::vector<Int> counts;
    for (const auto& vc : valueCounts) counts.push_back(vc.second);
    std::vector<std::vector<Int>> chosen;
    std::vector<std::vector<Cocharacter>> splits;
    detail::multiset_splits(valueCounts, 0, levi.parts, counts, chosen, splits);
    expected += static_cast<Int>(splits.size());
  }
  if (static_cast<Int>(seen.size()) != expected)
    throw DomainError("verify_wa: scenario ledger does not cover all (levi, split) pairs");
  const bool contained = res.surviving.empty();
  if (contained != (res.verdict == WaVerdict::Contained))
    throw DomainError("verify_wa: verdict inconsistent with surviving set");
}

}  // namespace hnstrat::oracles

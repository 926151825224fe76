#pragma once

// Stratification-level invariants: HN types Theta(mu,[b']), membership in
// B(G,mu)_HN, DOR non-emptiness, Hodge-Newton decomposability, dimension
// formulas with the equality classification, index-level Newton/HN relations,
// and the weak-admissibility containment pruner.

#include <hnstrat/hnengine.hpp>
#include <hnstrat/kottwitz.hpp>
#include <hnstrat/rational.hpp>
#include <hnstrat/rootdata.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hnstrat {

// HN pair (P, {lambda}): parabolic type plus a blockwise M-dominant integer
// cocharacter. The HN-pair condition (strictly decreasing block averages of
// -lambda) holds for every value produced by theta_set, because the Levi is
// the centralizer composition of the Newton point.
struct HNType {
  Composition levi;
  Cocharacter lam;  // weakly decreasing within each block

  bool blockwise_dominant() const {
    std::size_t pos = 0;
    for (Int part : levi.parts) {
      for (Int k = 1; k < part; ++k)
        if (lam.entries[pos + static_cast<std::size_t>(k) - 1] <
            lam.entries[pos + static_cast<std::size_t>(k)])
          return false;
      pos += static_cast<std::size_t>(part);
    }
    return true;
  }

  // Strictly decreasing block averages of -lambda across blocks.
  bool hn_pair_condition() const {
    const RatVec av = av_M(Cocharacter(lam.entries), levi);
    std::size_t pos = 0;
    for (std::size_t i = 0; i + 1 < levi.parts.size(); ++i) {
      pos += static_cast<std::size_t>(levi.parts[i]);
      if (!(-av[pos] < -av[pos - 1])) return false;
    }
    return true;
  }

  Cocharacter minus_lambda() const {
    std::vector<Int> out;
    out.reserve(lam.entries.size());
    for (Int x : lam.entries) out.push_back(-x);
    return Cocharacter(std::move(out));
  }

  bool operator==(const HNType& o) const { return levi == o.levi && lam == o.lam; }
  bool operator<(const HNType& o) const {
    if (!(levi == o.levi)) return levi < o.levi;
    return lam.entries < o.lam.entries;
  }
};

// Membership test for B(G,mu) without enumerating it.
inline bool is_in_B(const GroupDatum& G, const Cocharacter& mu, const NewtonPoint& nu) {
  if (static_cast<Int>(mu.size()) != G.n || static_cast<Int>(nu.size()) != G.n) return false;
  if (!nu.valid()) return false;
  if (vec_sum(nu.slopes) != Rat(mu.sum())) return false;
  return dominance_leq(nu.slopes, mu.sorted_desc().rational());
}

inline void require_in_B(const GroupDatum& G, const Cocharacter& mu, const NewtonPoint& nu) {
  if (!is_in_B(G, mu, nu))
    throw DomainError("nu = (" + format_ratvec(nu.slopes) + ") is not in B(G,mu)");
}

inline bool levi_allowed(const GroupDatum& G, const Composition& levi) {
  for (Int part : levi.parts)
    if ((part * G.twist_degree) % G.n != 0) return false;
  return true;
}

namespace detail {

// Weakly decreasing integer tuples of the given length and sum with entries in
// [lo, min(hi, cap)], emitted in descending lexicographic order.
inline void desc_tuples(Int length, Int sum, Int lo, Int hi, std::vector<Int>& acc,
                        std::vector<std::vector<Int>>& out) {
  if (length == 0) {
    if (sum == 0) out.push_back(acc);
    return;
  }
  for (Int v = std::min(hi, sum - lo * (length - 1)); v >= lo; --v) {
    if (v * length < sum) break;  // even repeating v cannot reach the sum
    acc.push_back(v);
    desc_tuples(length - 1, sum - v, lo, v, acc, out);
    acc.pop_back();
  }
}

inline std::vector<std::vector<Int>> desc_tuples(Int length, Int sum, Int lo, Int hi) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> acc;
  desc_tuples(length, sum, lo, hi, acc, out);
  return out;
}

}  // namespace detail

// All HN types of the stratum of nu in Gr_{G,mu}: the Levi is the slope-block
// composition of nu (basic-in-M plus P-regularity force the centralizer), and
// -lambda runs over blockwise weakly decreasing integer vectors with blockwise
// sums n_i * nu_i whose descending sort is dominated by mu_dom. Empty when the
// centralizer composition does not exist on the inner form.
inline std::vector<HNType> theta_set(const GroupDatum& G, const Cocharacter& mu,
                                     const NewtonPoint& nu) {
  require_in_B(G, mu, nu);
  const Composition M = centralizer_composition(nu);
  std::vector<HNType> out;
  if (!levi_allowed(G, M)) return out;

  const Cocharacter muDom = mu.sorted_desc();
  const Int hi = muDom.entries.front();
  const Int lo = muDom.entries.back();

  // Per block: candidate -lambda multisets (weakly decreasing tuples).
  std::vector<std::vector<std::vector<Int>>> blockChoices;
  std::size_t pos = 0;
  for (Int part : M.parts) {
    const Rat blockSum = nu.slopes[pos] * part;
    if (blockSum.denominator() != 1)
      throw DomainError("corrupt NewtonPoint: non-integral block sum");
    blockChoices.push_back(detail::desc_tuples(part, blockSum.numerator(), lo, hi));
    pos += static_cast<std::size_t>(part);
  }

  std::vector<std::vector<Int>> chosen(M.parts.size());
  const auto emit = [&] {
    std::vector<Int> minusLam;
    minusLam.reserve(mu.size());
    for (const auto& block : chosen) minusLam.insert(minusLam.end(), block.begin(), block.end());
    std::vector<Int> sorted = minusLam;
    std::sort(sorted.begin(), sorted.end(), std::greater<Int>());
    if (!coroot_order(to_ratvec(sorted), muDom.rational())) return;
    // Store lambda blockwise M-dominant: negate each block and sort descending.
    std::vector<Int> lam;
    lam.reserve(minusLam.size());
    for (const auto& block : chosen)
      for (auto it = block.rbegin(); it != block.rend(); ++it) lam.push_back(-*it);
    out.push_back(HNType{M, Cocharacter(std::move(lam))});
  };
  const auto rec = [&](auto&& self, std::size_t blockIdx) -> void {
    if (blockIdx == blockChoices.size()) {
      emit();
      return;
    }
    for (const auto& candidate : blockChoices[blockIdx]) {
      chosen[blockIdx] = candidate;
      self(self, blockIdx + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::pair<bool, std::optional<HNType>> is_in_B_HN(const GroupDatum& G, const Cocharacter& mu,
                                                         const NewtonPoint& nu) {
  const auto theta = theta_set(G, mu, nu);
  if (theta.empty()) return {false, std::nullopt};
  return {true, theta.front()};
}

// As theta_set but -lambda restricted to exact rearrangements of mu: the
// descending sort must equal mu_dom, not merely be dominated by it.
inline std::pair<bool, std::optional<HNType>> dor_nonempty(const GroupDatum& G, const Cocharacter& mu,
                                                           const NewtonPoint& nu) {
  const Cocharacter muDom = mu.sorted_desc();
  for (const auto& type : theta_set(G, mu, nu)) {
    if (type.minus_lambda().sorted_desc() == muDom) return {true, type};
  }
  return {false, std::nullopt};
}

// Cumulative sums of (mu_dom - nu); entries are >= 0 whenever nu is in B(G,mu).
inline RatVec hn_defect_partials(const Cocharacter& mu, const NewtonPoint& nu) {
  const Cocharacter muDom = mu.sorted_desc();
  if (muDom.size() != nu.size()) throw DomainError("length mismatch");
  RatVec out;
  Rat acc(0);
  for (std::size_t i = 0; i < nu.size(); ++i) {
    acc += Rat(muDom.entries[i]) - nu.slopes[i];
    out.push_back(acc);
  }
  return out;
}

// (mu, nu) decomposes along the proper levi: the levi contains the centralizer
// of nu and mu_dom - nu is supported inside the levi blocks.
inline bool hn_decomposable(const Cocharacter& mu, const NewtonPoint& nu, const Composition& levi) {
  require_in_B(GroupDatum{static_cast<Int>(mu.size()), 0}, mu, nu);
  if (levi.total() != static_cast<Int>(mu.size())) throw DomainError("levi is not a composition of n");
  if (!levi.is_proper()) throw DomainError("hn_decomposable needs a proper levi");
  if (!levi.coarsens(centralizer_composition(nu))) return false;
  const RatVec partials = hn_defect_partials(mu, nu);
  for (Int b : levi.boundaries())
    if (partials[static_cast<std::size_t>(b) - 1] != Rat(0)) return false;
  return true;
}

// Finest levi along which (mu, nu) decomposes; (n) when indecomposable. Its
// interior boundaries are exactly the centralizer boundaries at which the
// cumulative defect vanishes.
inline Composition smallest_hnd_levi(const Cocharacter& mu, const NewtonPoint& nu) {
  require_in_B(GroupDatum{static_cast<Int>(mu.size()), 0}, mu, nu);
  const RatVec partials = hn_defect_partials(mu, nu);
  std::vector<Int> cuts;
  for (Int b : centralizer_composition(nu).boundaries())
    if (partials[static_cast<std::size_t>(b) - 1] == Rat(0)) cuts.push_back(b);
  if (cuts.empty()) return Composition({static_cast<Int>(mu.size())});
  return Composition::from_boundaries(static_cast<Int>(mu.size()), cuts);
}

// True iff every non-basic class in B(G,mu) decomposes along some proper levi;
// returns the first counterexample in descending-lex order otherwise.
inline std::pair<bool, std::optional<NewtonPoint>> fully_hnd(const GroupDatum& G,
                                                             const Cocharacter& mu) {
  for (const auto& nu : enumerate_B(G, mu)) {
    if (nu.is_basic()) continue;
    if (!smallest_hnd_levi(mu, nu).is_proper()) return {false, nu};
  }
  return {true, std::nullopt};
}

// <2 rho, mu_dom - nu>: the dimension of the Newton stratum.
inline Rat dim_newton(const Cocharacter& mu, const NewtonPoint& nu) {
  require_in_B(GroupDatum{static_cast<Int>(mu.size()), 0}, mu, nu);
  RatVec diff = mu.sorted_desc().rational();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= nu.slopes[i];
  const Rat value = rho_pairing(diff, 2);
  if (mu.is_minuscule() && value.denominator() != 1)
    throw DomainError("dim_newton: non-integral value for minuscule mu");
  return value;
}

// max over Theta of <rho, mu_dom + lambda> with lambda blockwise M-dominant
// (the Iwasawa/MV cell dimension). Only asserted for minuscule mu. The
// doubled <2 rho, mu + lambda> normalization is available on request.
inline Rat dim_hn_bound(const GroupDatum& G, const Cocharacter& mu, const NewtonPoint& nu,
                        int scale = 1) {
  if (!mu.is_minuscule())
    throw DomainError("dim_hn_bound: refused for non-minuscule mu");
  const auto theta = theta_set(G, mu, nu);
  if (theta.empty()) throw DomainError("dim_hn_bound: empty Theta (nu not in B(G,mu)_HN)");
  const RatVec muDom = mu.sorted_desc().rational();
  std::optional<Rat> best;
  for (const auto& type : theta) {
    RatVec v = muDom;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += Rat(type.lam.entries[i]);
    const Rat value = rho_pairing(v, scale);
    if (!best || value > *best) best = value;
  }
  return *best;
}

inline Rat dim_hn_bound(const Cocharacter& mu, const NewtonPoint& nu, int scale = 1) {
  return dim_hn_bound(GroupDatum{static_cast<Int>(mu.size()), 0}, mu, nu, scale);
}

// Dimension equality classification: nu constant on every block of the
// smallest HND levi (for indecomposable classes that levi is (n), so the
// predicate then requires nu basic).
inline bool dims_equal_classification(const Cocharacter& mu, const NewtonPoint& nu) {
  if (!mu.is_minuscule())
    throw DomainError("dims_equal_classification: refused for non-minuscule mu");
  const Composition levi = smallest_hnd_levi(mu, nu);
  std::size_t pos = 0;
  for (Int part : levi.parts) {
    for (Int k = 1; k < part; ++k)
      if (nu.slopes[pos + static_cast<std::size_t>(k)] != nu.slopes[pos]) return false;
    pos += static_cast<std::size_t>(part);
  }
  return true;
}

// Index-level comparison table between Newton and HN strata. For each nu in
// B(G,mu): hn_dominance_set lists the HN strata that can meet the Newton
// stratum of nu's dual by the dominance containment; hn_sharp_set collapses to
// {nu} when the Hodge-Newton transport corollary pins the stratum exactly
// (decomposable along the centralizer, or basic); newton_dominance_set lists
// the Newton strata that can meet the HN stratum of nu.
struct IndexRelationRow {
  NewtonPoint nu;
  bool in_B_HN = false;
  std::vector<NewtonPoint> hn_dominance_set;
  std::vector<NewtonPoint> hn_sharp_set;
  std::vector<NewtonPoint> newton_dominance_set;  // only populated when in_B_HN
};

inline std::vector<IndexRelationRow> index_relations(const GroupDatum& G, const Cocharacter& mu) {
  const auto B = enumerate_B(G, mu);
  std::vector<char> inHN;
  inHN.reserve(B.size());
  for (const auto& nu : B) inHN.push_back(is_in_B_HN(G, mu, nu).first ? 1 : 0);

  std::vector<IndexRelationRow> rows;
  rows.reserve(B.size());
  for (std::size_t i = 0; i < B.size(); ++i) {
    IndexRelationRow row;
    row.nu = B[i];
    row.in_B_HN = inHN[i] != 0;
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (inHN[j] && dominance_leq(B[j].slopes, B[i].slopes)) row.hn_dominance_set.push_back(B[j]);
      if (row.in_B_HN && dominance_leq(B[i].slopes, B[j].slopes))
        row.newton_dominance_set.push_back(B[j]);
    }
    const Composition cent = centralizer_composition(B[i]);
    const bool sharp =
        row.in_B_HN && (B[i].is_basic() ||
                        (cent.is_proper() && levi_allowed(G, cent) && hn_decomposable(mu, B[i], cent)));
    if (sharp)
      row.hn_sharp_set = {B[i]};
    else
      row.hn_sharp_set = row.hn_dominance_set;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Blockwise split of a modification along a levi, with the Hodge-Newton
// consistency checks: P-regularity (strict slope drop across block boundaries)
// and global HN polygon = concatenation of the blockwise polygons.
struct HodgeNewtonBlock {
  ModificationInstance instance;
  Polygon polygon;
};

struct HodgeNewtonProjection {
  std::vector<HodgeNewtonBlock> blocks;
  Polygon global;
};

inline HodgeNewtonProjection hodge_newton_project(const ModificationInstance& inst,
                                                  const Composition& levi) {
  inst.require_valid();
  const Int n = inst.rank();
  if (levi.total() != n) throw DomainError("levi is not a composition of the instance rank");
  Int twist = 0;
  for (const auto& blk : inst.blocks) twist += blk.d;
  if (!levi_allowed(GroupDatum{n, twist}, levi))
    throw DomainError("levi not allowed on the inner form of the underlying bundle");

  // Group instance blocks along the levi parts; they must align exactly.
  HodgeNewtonProjection out;
  std::size_t blockIdx = 0;
  for (Int part : levi.parts) {
    ModificationInstance sub;
    Int acc = 0;
    while (acc < part) {
      if (blockIdx >= inst.blocks.size())
        throw DomainError("instance blocks do not align with the levi");
      sub.blocks.push_back(inst.blocks[blockIdx]);
      acc += inst.blocks[blockIdx].h;
      ++blockIdx;
    }
    if (acc != part) throw DomainError("instance blocks do not align with the levi");
    out.blocks.push_back(HodgeNewtonBlock{sub, modification_hn(sub)});
  }
  if (blockIdx != inst.blocks.size()) throw DomainError("instance blocks do not align with the levi");

  // P-regularity: minimal slope of each block strictly above the maximal slope
  // of the next.
  for (std::size_t i = 0; i + 1 < out.blocks.size(); ++i) {
    const RatVec cur = out.blocks[i].polygon.unit_slopes();
    const RatVec next = out.blocks[i + 1].polygon.unit_slopes();
    if (!(cur.back() > next.front()))
      throw DomainError("P-regularity fails: slopes do not strictly drop across the levi boundary");
  }

  // Global polygon must be the concatenation of the blockwise ones.
  RatVec concat;
  concat.reserve(static_cast<std::size_t>(n));
  for (const auto& blk : out.blocks) {
    const RatVec s = blk.polygon.unit_slopes();
    concat.insert(concat.end(), s.begin(), s.end());
  }
  out.global = modification_hn(inst);
  if (!(Polygon::from_slopes(concat) == out.global))
    throw DomainError("blockwise polygons do not concatenate to the global HN polygon");

  // Blockwise Newton point of the modified bundle equals the blockwise HN
  // slopes (block-scalar consistency).
  for (const auto& blk : out.blocks) {
    RatVec newton;
    for (const auto& b : blk.instance.blocks)
      newton.insert(newton.end(), static_cast<std::size_t>(b.h), Rat(b.d + b.a * b.h, b.h));
    std::sort(newton.begin(), newton.end(), std::greater<Rat>());
    if (newton != blk.polygon.unit_slopes())
      throw DomainError("blockwise Newton point disagrees with the blockwise HN polygon");
  }
  return out;
}

// Weak-admissibility containment pruner.
enum class WaVerdict { Contained, Inconclusive };

struct WaScenario {
  Composition levi;
  std::vector<Cocharacter> mu_split;  // blockwise mu multisets, each sorted descending
  std::vector<NewtonPoint> eta;       // blockwise reductions (empty in kill ledger entries)
  std::string killed_by;              // empty for surviving scenarios
};

struct WaResult {
  WaVerdict verdict = WaVerdict::Contained;
  std::vector<WaScenario> killed;     // one ledger entry per (levi, mu-split)
  std::vector<WaScenario> surviving;  // all (levi, mu-split, eta) that pass every rule
};

namespace detail {

// Ordered splits of the multiset of mu entries into blocks of the given sizes;
// each block is emitted sorted descending.
inline void multiset_splits(const std::vector<std::pair<Int, Int>>& valueCounts, std::size_t blockIdx,
                            const std::vector<Int>& sizes, std::vector<Int>& counts,
                            std::vector<std::vector<Int>>& chosen,
                            std::vector<std::vector<Cocharacter>>& out) {
  if (blockIdx == sizes.size()) {
    std::vector<Cocharacter> split;
    split.reserve(chosen.size());
    for (const auto& blockCounts : chosen) {
      std::vector<Int> entries;
      for (std::size_t v = 0; v < valueCounts.size(); ++v)
        entries.insert(entries.end(), static_cast<std::size_t>(blockCounts[v]), valueCounts[v].first);
      split.emplace_back(std::move(entries));
    }
    out.push_back(std::move(split));
    return;
  }
  // Choose how many copies of each value go into this block.
  std::vector<Int> take(valueCounts.size(), 0);
  const auto rec = [&](auto&& self, std::size_t v, Int remaining) -> void {
    if (v == valueCounts.size()) {
      if (remaining != 0) return;
      chosen.push_back(take);
      for (std::size_t i = 0; i < take.size(); ++i) counts[i] -= take[i];
      multiset_splits(valueCounts, blockIdx + 1, sizes, counts, chosen, out);
      for (std::size_t i = 0; i < take.size(); ++i) counts[i] += take[i];
      chosen.pop_back();
      return;
    }
    for (Int t = std::min(counts[v], remaining); t >= 0; --t) {
      take[v] = t;
      self(self, v + 1, remaining - t);
      take[v] = 0;
    }
  };
  rec(rec, 0, sizes[blockIdx]);
}

inline Int mult_geq(const RatVec& slopes, const Rat& s) {
  Int count = 0;
  for (const Rat& x : slopes)
    if (x >= s) ++count;
  return count;
}

}  // namespace detail

// Necessary-condition pruner for "the Newton stratum of nuPrime lies inside
// the weakly admissible locus". Enumerates violation scenarios (proper allowed
// levi, ordered split of mu, blockwise reductions eta_i) and applies:
//   R1  some leading partial degree strictly above the average line
//   R0  sorted reduction slope vector dominated by nuPrime
//   R2  for every threshold s: mult_{>=s}(nuPrime) <= sum_i mult_{>=s}(eta_i)
//   R3  sum of deg(eta_i) equals deg(nuPrime)
// An empty surviving set certifies containment; otherwise inconclusive.
inline WaResult wa_containment(const IsocrystalBlocks& b, const Cocharacter& mu,
                               const NewtonPoint& nuPrime) {
  b.require_valid();
  if (!b.is_basic()) throw DomainError("wa_containment: non-basic b");
  const Int n = b.rank();
  const GroupDatum G{n, b.degree()};
  if (static_cast<Int>(mu.size()) != n) throw DomainError("wa_containment: length of mu must be n");
  {
    // nuPrime must be a possible Newton point of a modification of b along mu.
    const Rat nuB(b.blocks.front().d, b.blocks.front().h);
    RatVec bound = mu.sorted_desc().rational();
    for (Rat& x : bound) x += nuB;
    nuPrime.require_valid();
    if (static_cast<Int>(nuPrime.size()) != n || !dominance_leq(nuPrime.slopes, bound))
      throw DomainError("nuPrime is not in B(G,mu,b)");
  }

  const Rat slopeB(b.blocks.front().d, b.blocks.front().h);
  const Rat totalDeg = vec_sum(nuPrime.slopes);
  WaResult result;

  std::vector<std::pair<Int, Int>> valueCounts;  // distinct mu values (desc) with counts
  {
    const Cocharacter muDom = mu.sorted_desc();
    for (Int x : muDom.entries) {
      if (!valueCounts.empty() && valueCounts.back().first == x)
        ++valueCounts.back().second;
      else
        valueCounts.emplace_back(x, 1);
    }
  }

  for (const auto& levi : allowed_levis(G)) {
    if (!levi.is_proper()) continue;
    std::vector<std::vector<Cocharacter>> splits;
    {
      std::vector<Int> counts;
      for (const auto& vc : valueCounts) counts.push_back(vc.second);
      std::vector<std::vector<Int>> chosen;
      detail::multiset_splits(valueCounts, 0, levi.parts, counts, chosen, splits);
    }
    for (const auto& split : splits) {
      // Blockwise degrees of the reductions are forced by the split.
      std::vector<Rat> blockDeg;
      for (std::size_t i = 0; i < split.size(); ++i)
        blockDeg.push_back(slopeB * levi.parts[i] + Rat(split[i].sum()));

      WaScenario scenario;
      scenario.levi = levi;
      scenario.mu_split = split;

      // R1: the reduction witnesses a weak-admissibility violation.
      bool violation = false;
      {
        Rat deg(0);
        Int rank = 0;
        for (std::size_t i = 0; i + 1 < split.size(); ++i) {
          deg += blockDeg[i];
          rank += levi.parts[i];
          if (deg * n > totalDeg * rank) violation = true;
        }
      }
      if (!violation) {
        scenario.killed_by = "R1";
        result.killed.push_back(std::move(scenario));
        continue;
      }

      // R0: the sorted reduction slope vector must be dominated by nuPrime.
      {
        RatVec reduction;
        for (std::size_t i = 0; i < split.size(); ++i)
          reduction.insert(reduction.end(), static_cast<std::size_t>(levi.parts[i]),
                           blockDeg[i] / levi.parts[i]);
        std::sort(reduction.begin(), reduction.end(), std::greater<Rat>());
        if (!dominance_leq(reduction, nuPrime.slopes)) {
          scenario.killed_by = "R0";
          result.killed.push_back(std::move(scenario));
          continue;
        }
      }

      // Blockwise reduction candidates.
      std::vector<std::vector<NewtonPoint>> etaChoices;
      for (std::size_t i = 0; i < split.size(); ++i) {
        const Int mi = levi.parts[i];
        IsocrystalBlocks bi;
        const Int h = b.blocks.front().h;
        for (Int k = 0; k < mi / h; ++k) bi.blocks.push_back(b.blocks.front());
        etaChoices.push_back(enumerate_B_mu_b(GroupDatum{mi, (slopeB * mi).numerator()}, split[i], bi));
      }

      // R2 + R3 over tuples of blockwise reductions.
      bool survived = false;
      std::vector<NewtonPoint> eta(split.size());
      const auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == split.size()) {
          Rat degSum(0);
          for (const auto& e : eta) degSum += vec_sum(e.slopes);
          if (degSum != totalDeg) return;  // R3 (holds by construction)
          RatVec thresholds = nuPrime.slopes;
          thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
          for (const Rat& s : thresholds) {
            Int have = 0;
            for (const auto& e : eta) have += detail::mult_geq(e.slopes, s);
            if (detail::mult_geq(nuPrime.slopes, s) > have) return;  // R2
          }
          survived = true;
          WaScenario ok;
          ok.levi = levi;
          ok.mu_split = split;
          ok.eta = eta;
          result.surviving.push_back(std::move(ok));
          return;
        }
        for (const auto& candidate : etaChoices[i]) {
          eta[i] = candidate;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
      if (!survived) {
        scenario.killed_by = "R2";
        result.killed.push_back(std::move(scenario));
      }
    }
  }
  result.verdict = result.surviving.empty() ? WaVerdict::Contained : WaVerdict::Inconclusive;
  return result;
}

// Aggregated per-class report.
struct StratumReport {
  NewtonPoint nu;
  bool in_B = false;
  bool in_B_HN = false;
  std::vector<HNType> theta;
  Composition hnd_levi;  // (n) means indecomposable
  Rat dim_newton_value;
  std::optional<Rat> dim_hn_bound_value;       // minuscule mu and nonempty Theta only
  std::optional<Rat> dim_hn_bound_2rho; // the <2rho,.> variant, on request
  std::optional<bool> dims_equal;              // minuscule mu and in_B_HN only
  bool dor = false;
  std::optional<HNType> dor_witness;
};

inline StratumReport stratum_report(const GroupDatum& G, const Cocharacter& mu,
                                    const NewtonPoint& nu, bool with2rho = false) {
  require_in_B(G, mu, nu);
  StratumReport r;
  r.nu = nu;
  r.in_B = true;
  r.theta = theta_set(G, mu, nu);
  r.in_B_HN = !r.theta.empty();
  r.hnd_levi = smallest_hnd_levi(mu, nu);
  r.dim_newton_value = dim_newton(mu, nu);
  if (mu.is_minuscule() && r.in_B_HN) {
    r.dim_hn_bound_value = dim_hn_bound(G, mu, nu, 1);
    if (with2rho) r.dim_hn_bound_2rho = dim_hn_bound(G, mu, nu, 2);
    r.dims_equal = dims_equal_classification(mu, nu);
  }
  const auto dor = dor_nonempty(G, mu, nu);
  r.dor = dor.first;
  r.dor_witness = dor.second;
  return r;
}

}  // namespace hnstrat

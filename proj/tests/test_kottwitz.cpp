#include <catch2/catch_amalgamated.hpp>

#include <hnstrat/oracles.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace tests;

TEST_CASE("newton point validity", "[kottwitz]") {
  REQUIRE(np("1,1/2,1/2").valid());
  REQUIRE(np("0,0,0").valid());
  REQUIRE(np("5/2,5/2,5/3,5/3,5/3").valid());
  REQUIRE_FALSE(np("1/2,1/2,1/2").valid());  // run of 3 for denominator 2
  REQUIRE_FALSE(np("1/3,1/3").valid());
  REQUIRE_FALSE(np("0,1").valid());  // increasing
  REQUIRE_FALSE(NewtonPoint(RatVec{}).valid());
  REQUIRE_THROWS_AS(np("1/3,1/3").require_valid(), DomainError);

  REQUIRE(np("1/2,1/2").is_basic());
  REQUIRE_FALSE(np("1,0").is_basic());
}

TEST_CASE("isocrystal block data", "[kottwitz]") {
  IsocrystalBlocks b;
  b.blocks = {{5, 7}, {5, 7}};
  b.require_valid();
  REQUIRE(b.rank() == 14);
  REQUIRE(b.degree() == 10);
  REQUIRE(b.is_basic());
  REQUIRE(b.newton() == NewtonPoint(rep({{Rat(5, 7), 14}})));

  IsocrystalBlocks mixed;
  mixed.blocks = {{0, 1}, {1, 2}};
  REQUIRE_FALSE(mixed.is_basic());
  REQUIRE(mixed.newton() == np("1/2,1/2,0"));

  IsocrystalBlocks bad;
  REQUIRE_THROWS_AS(bad.require_valid(), DomainError);
  bad.blocks = {{2, 4}};
  REQUIRE_THROWS_AS(bad.require_valid(), DomainError);
  bad.blocks = {{1, 0}};
  REQUIRE_THROWS_AS(bad.require_valid(), DomainError);
}

TEST_CASE("kappa is the integral degree", "[kottwitz]") {
  REQUIRE(kappa(np("1/2,1/2")) == 1);
  REQUIRE(kappa(NewtonPoint(rep({{Rat(3, 2), 4}, {Rat(4, 5), 10}}))) == 14);
  REQUIRE(kappa(np("2/3,2/3,2/3,1/2,1/2,1/2,1/2")) == 4);
  REQUIRE_THROWS_AS(kappa(np("1/3,1/3")), DomainError);
}

TEST_CASE("basic element", "[kottwitz]") {
  REQUIRE(basic_element(GroupDatum{2, 0}, cc({1, 0})) == np("1/2,1/2"));
  REQUIRE(basic_element(GroupDatum{3, 0}, cc({0, 0, 0})) == np("0,0,0"));
  REQUIRE(basic_element(GroupDatum{5, 2}, cc({1, 1, 0, 0, 0})) ==
          NewtonPoint(rep({{Rat(2, 5), 5}})));
}

TEST_CASE("dual class", "[kottwitz]") {
  REQUIRE(dual_class(np("1,0")) == np("0,-1"));
  REQUIRE(dual_class(np("-1/3,-1/3,-1/3,-1/2,-1/2")) == np("1/2,1/2,1/3,1/3,1/3"));

  const auto B = enumerate_B(GroupDatum{4, 0}, cc({2, 1, 0, -1}));
  for (const auto& nu : B) {
    REQUIRE(dual_class(dual_class(nu)) == nu);
    REQUIRE(dual_class(nu).valid());
    REQUIRE(kappa(dual_class(nu)) == -kappa(nu));
  }
  // Duality preserves the dominance order.
  for (const auto& a : B)
    for (const auto& b : B)
      REQUIRE(dominance_leq(a.slopes, b.slopes) ==
              dominance_leq(dual_class(a).slopes, dual_class(b).slopes));
}

TEST_CASE("centralizer composition", "[kottwitz]") {
  REQUIRE(centralizer_composition(np("5/2,5/2,5/3,5/3,5/3")) == Composition({2, 3}));
  REQUIRE(centralizer_composition(np("1/2,1/2")) == Composition({2}));
  REQUIRE(centralizer_composition(np("1,3/5,3/5,3/5,3/5,3/5,0")) == Composition({1, 5, 1}));
}

TEST_CASE("class enumeration fixtures", "[kottwitz]") {
  REQUIRE(enumerate_B(GroupDatum{2, 0}, cc({1, 0})) ==
          std::vector<NewtonPoint>({np("1,0"), np("1/2,1/2")}));
  REQUIRE(enumerate_B(GroupDatum{1, 0}, cc({0})) == std::vector<NewtonPoint>{np("0")});

  const auto B5 = enumerate_B(GroupDatum{5, 0}, cc({1, 1, 0, 0, 0}));
  REQUIRE(std::find(B5.begin(), B5.end(), np("1/2,1/2,1/3,1/3,1/3")) != B5.end());

  REQUIRE_THROWS_AS(enumerate_B(GroupDatum{3, 0}, cc({1, 0})), DomainError);
  REQUIRE_THROWS_AS(enumerate_newton_below(2, rv("0,1")), DomainError);
}

TEST_CASE("class enumeration matches the grid oracle", "[kottwitz]") {
  for (Int n = 1; n <= 4; ++n) {
    for (const auto& mu : dominant_grid(n, -2, 2)) {
      const GroupDatum G{n, 0};
      const auto fast = enumerate_B(G, mu);
      const auto brute = oracles::enumerate_B(G, mu);
      REQUIRE(fast == brute);
    }
  }
  // Spot checks at rank 5.
  for (const auto& mu : {cc({1, 1, 0, 0, 0}), cc({2, 1, 0, -1, -2}), cc({1, 1, 1, 0, 0})}) {
    const GroupDatum G{5, 0};
    REQUIRE(enumerate_B(G, mu) == oracles::enumerate_B(G, mu));
  }
}

TEST_CASE("class enumeration output invariants", "[kottwitz]") {
  for (const auto& mu : {cc({1, 1, 0, 0}), cc({2, 0, 0, -1}), cc({3, 1, 1, 0})}) {
    const GroupDatum G{4, 0};
    const auto B = enumerate_B(G, mu);
    const Cocharacter muDom = mu.sorted_desc();

    REQUIRE(!B.empty());
    REQUIRE(B.front() == NewtonPoint(muDom.rational()));  // unique maximum first
    REQUIRE(B.back() == basic_element(G, mu));            // unique minimum last
    std::set<NewtonPoint> dedup(B.begin(), B.end());
    REQUIRE(dedup.size() == B.size());
    for (std::size_t i = 1; i < B.size(); ++i) REQUIRE(B[i].slopes < B[i - 1].slopes);
    for (const auto& nu : B) {
      REQUIRE(nu.valid());
      REQUIRE(kappa(nu) == mu.sum());
      REQUIRE(dominance_leq(nu.slopes, muDom.rational()));
      REQUIRE(dominance_leq(basic_element(G, mu).slopes, nu.slopes));
    }
  }
}

TEST_CASE("enumeration of modified classes", "[kottwitz]") {
  IsocrystalBlocks half;
  half.blocks = {{1, 2}};
  REQUIRE(enumerate_B_mu_b(GroupDatum{2, 1}, cc({1, 0}), half) ==
          std::vector<NewtonPoint>{np("1,1")});

  // Trivial b reduces to the plain enumeration.
  IsocrystalBlocks trivial;
  trivial.blocks = {{0, 1}, {0, 1}};
  REQUIRE(enumerate_B_mu_b(GroupDatum{2, 0}, cc({1, 0}), trivial) ==
          enumerate_B(GroupDatum{2, 0}, cc({1, 0})));

  // mu = 0 leaves only the unmodified class.
  IsocrystalBlocks b57;
  b57.blocks = {{5, 7}};
  REQUIRE(enumerate_B_mu_b(GroupDatum{7, 5}, cc({0, 0, 0, 0, 0, 0, 0}), b57) ==
          std::vector<NewtonPoint>{b57.newton()});

  // Bound arithmetic: one modification step on a slope-5/7 line bundle.
  const auto B = enumerate_B_mu_b(GroupDatum{7, 5}, cc({1, 0, 0, 0, 0, 0, 0}), b57);
  const RatVec bound = rep({{Rat(12, 7), 1}, {Rat(5, 7), 6}});
  for (const auto& nu : B) {
    REQUIRE(dominance_leq(nu.slopes, bound));
    REQUIRE(vec_sum(nu.slopes) == Rat(6));
    // No class reaches two slopes >= 3/2: partial sum 3 would exceed 17/7.
    REQUIRE_FALSE((nu.slopes.size() >= 2 && nu.slopes[1] >= Rat(3, 2)));
  }

  IsocrystalBlocks nonbasic;
  nonbasic.blocks = {{0, 1}, {1, 2}};
  REQUIRE_THROWS_AS(enumerate_B_mu_b(GroupDatum{3, 1}, cc({1, 0, 0}), nonbasic), DomainError);
  REQUIRE_THROWS_AS(enumerate_B_mu_b(GroupDatum{3, 1}, cc({1, 0, 0}), half), DomainError);
}

TEST_CASE("levi types on inner forms", "[kottwitz]") {
  const auto split3 = allowed_levis(GroupDatum{3, 0});
  REQUIRE(split3 == std::vector<Composition>({Composition({1, 1, 1}), Composition({1, 2}),
                                              Composition({2, 1}), Composition({3})}));

  REQUIRE(allowed_levis(GroupDatum{5, 2}) == std::vector<Composition>{Composition({5})});
  REQUIRE(allowed_levis(GroupDatum{14, 10}) ==
          std::vector<Composition>({Composition({7, 7}), Composition({14})}));
  REQUIRE(allowed_levis(GroupDatum{4, 2}) ==
          std::vector<Composition>({Composition({2, 2}), Composition({4})}));

  // (n) is always allowed; merging adjacent allowed parts stays allowed.
  for (Int twist = 0; twist <= 6; ++twist) {
    const GroupDatum G{6, twist};
    const auto levis = allowed_levis(G);
    REQUIRE(std::find(levis.begin(), levis.end(), Composition({6})) != levis.end());
    for (const auto& m : levis) {
      for (std::size_t i = 0; i + 1 < m.parts.size(); ++i) {
        std::vector<Int> merged(m.parts.begin(), m.parts.end());
        merged[i] += merged[i + 1];
        merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        REQUIRE(std::find(levis.begin(), levis.end(), Composition(merged)) != levis.end());
      }
    }
  }
}

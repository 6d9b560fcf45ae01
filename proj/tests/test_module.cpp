#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "modlab/module.hpp"

using namespace modlab;

namespace {

std::set<int> sub_set(const Submodule& s) { return {s.elements.begin(), s.elements.end()}; }

// Independent oracle: submodules of the regular Z/n module are exactly the
// subgroups dZ/nZ for divisors d of n.
std::vector<std::set<int>> regular_submodules_oracle(int n) {
  std::vector<std::set<int>> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::set<int> s;
    for (int x = 0; x < n; x += d) s.insert(x);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("build_module basics") {
  auto z12 = FiniteRing::residue(12);
  auto reg = FiniteModule::regular(z12);
  CHECK(reg->size() == 12);
  CHECK_FALSE(reg->integer_base());
  CHECK(reg->zero() == 0);

  auto z2 = FiniteRing::residue(2);
  auto z3 = FiniteRing::residue(3);
  auto prod = FiniteModule::product(FiniteModule::regular(z2), FiniteModule::regular(z3));
  CHECK(prod->size() == 6);
  CHECK(prod->scalar_count() == 6);

  auto klein = FiniteModule::cyclic_over_ring(z2, {2, 2});
  CHECK(klein->size() == 4);
  CHECK(klein->absorbing_scalars() == std::vector<int>{0});

  auto z2z4 = FiniteModule::cyclic_over_integers({2, 4});
  CHECK(z2z4->size() == 8);
  CHECK(z2z4->scalar_count() == 4);  // exponent lcm(2,4)
  CHECK(z2z4->integer_base());
  CHECK(z2z4->absorbing_scalars().size() == 4);

  CHECK_THROWS_AS(FiniteModule::cyclic_over_ring(z2, {3}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteModule::cyclic_over_integers({300}), CapError);
}

TEST_CASE("explicit module tables are verified at build time") {
  auto z2 = FiniteRing::residue(2);
  // Broken action: scalar 1 does not act as the identity.
  std::vector<std::uint16_t> add = {0, 1, 1, 0};
  std::vector<std::uint16_t> act = {0, 0, 0, 0};
  CHECK_THROWS_AS(FiniteModule::from_tables(z2, false, 2, add, act, {"0", "1"}, {}, "broken"),
                  std::invalid_argument);
}

TEST_CASE("enumerate_submodules") {
  SECTION("regular Z/12 has the divisor lattice") {
    auto mod = FiniteModule::regular(FiniteRing::residue(12));
    auto lat = enumerate_submodules(mod);
    REQUIRE(lat.subs.size() == 6);
    auto oracle = regular_submodules_oracle(12);
    for (const auto& s : lat.subs) {
      CHECK(std::find(oracle.begin(), oracle.end(), sub_set(s)) != oracle.end());
    }
    // Sorted by size: <0>, <6>, <4>, <3>, <2>, <1>.
    CHECK(lat.subs[0].size() == 1);
    CHECK(sub_set(lat.subs[1]) == std::set<int>{0, 6});
    CHECK(sub_set(lat.subs[2]) == std::set<int>{0, 4, 8});
    CHECK(sub_set(lat.subs[3]) == std::set<int>{0, 3, 6, 9});
    CHECK(lat.subs[4].size() == 6);
    CHECK(lat.subs[5].is_whole());
  }
  SECTION("Klein four group over F2 has five submodules") {
    auto mod = FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2});
    auto lat = enumerate_submodules(mod);
    CHECK(lat.subs.size() == 5);
  }
  SECTION("regular module over a prime field has two submodules") {
    auto mod = FiniteModule::regular(FiniteRing::residue(7));
    CHECK(enumerate_submodules(mod).subs.size() == 2);
  }
  SECTION("lattice cap") {
    auto mod = FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2});
    CHECK_THROWS_AS(enumerate_submodules(mod, 3), CapError);
  }
}

TEST_CASE("colon operations") {
  auto z12 = FiniteRing::residue(12);
  auto mod = FiniteModule::regular(z12);
  auto n4 = submodule_span(mod, {4});
  auto n6 = submodule_span(mod, {6});

  SECTION("(N : M) in a regular module is N itself as an ideal") {
    CHECK(colon_module(n4) == ideal_span(z12, {4}));
  }
  SECTION("(N : m) for a single element") {
    CHECK(colon_element(n6, 3) == ideal_span(z12, {2}));
  }
  SECTION("colon into the module") {
    CHECK(sub_set(colon_in_module(n4, 6)) == std::set<int>{0, 2, 4, 6, 8, 10});
    CHECK(colon_in_module(n4, 1) == n4);
    CHECK(colon_in_module(n4, 0).is_whole());
  }
  SECTION("lines in the Klein four module have zero colon") {
    auto klein = FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2});
    auto lat = enumerate_submodules(klein);
    for (const auto& s : lat.subs) {
      if (s.size() != 2) continue;
      CHECK(colon_module(s).is_zero());
    }
  }
  SECTION("mismatched modules") {
    auto other = FiniteModule::regular(FiniteRing::residue(6));
    CHECK_THROWS_AS(colon_submodule(n4, zero_submodule(other)), std::invalid_argument);
  }
}

TEST_CASE("m_radical") {
  auto mod = FiniteModule::regular(FiniteRing::residue(12));
  auto lat = enumerate_submodules(mod);

  CHECK(sub_set(m_radical(submodule_span(mod, {4}), lat)) ==
        std::set<int>{0, 2, 4, 6, 8, 10});
  CHECK(sub_set(m_radical(zero_submodule(mod), lat)) == std::set<int>{0, 6});
  CHECK(m_radical(whole_submodule(mod), lat).is_whole());
}

TEST_CASE("classify_submodule on regular Z/12") {
  auto mod = FiniteModule::regular(FiniteRing::residue(12));
  auto lat = enumerate_submodules(mod);

  SECTION("zero submodule") {
    auto rep = classify_submodule(zero_submodule(mod), lat);
    CHECK(rep.proper);
    CHECK_FALSE(rep.one_absorbing_primary);
    REQUIRE(rep.one_absorbing_primary_witness.has_value());
    CHECK(rep.one_absorbing_primary_witness->scalar_a == 2);
    CHECK(rep.one_absorbing_primary_witness->scalar_b == 2);
    CHECK(rep.one_absorbing_primary_witness->elem == 3);
    CHECK(rep.two_absorbing_primary);
  }
  SECTION("submodule generated by 4") {
    auto rep = classify_submodule(submodule_span(mod, {4}), lat);
    CHECK(rep.one_absorbing_primary);
    CHECK(rep.primary);
    CHECK_FALSE(rep.prime);
    REQUIRE(rep.p_one_absorbing_primary_for.has_value());
    CHECK(*rep.p_one_absorbing_primary_for == ideal_span(mod->scalar_ring(), {2}));
  }
  SECTION("whole module classifies proper=false with all flags false") {
    auto rep = classify_submodule(whole_submodule(mod), lat);
    CHECK_FALSE(rep.proper);
    CHECK_FALSE(rep.prime);
    CHECK_FALSE(rep.one_absorbing_primary);
  }
}

TEST_CASE("Klein lines are vacuously 1-absorbing primary over F2") {
  auto klein = FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2});
  auto lat = enumerate_submodules(klein);
  for (const auto& s : lat.subs) {
    if (s.size() != 2) continue;
    auto rep = classify_submodule(s, lat);
    CHECK(rep.one_absorbing_primary);
  }
}

TEST_CASE("multiplication modules") {
  auto z12 = FiniteRing::residue(12);
  auto mod = FiniteModule::regular(z12);
  auto lat = enumerate_submodules(mod);
  REQUIRE(is_multiplication(lat));

  SECTION("submodule product in the regular module") {
    auto p = submodule_product(submodule_span(mod, {4}), submodule_span(mod, {3}), lat);
    CHECK(p == zero_submodule(mod));
  }
  SECTION("N * M = N") {
    for (const auto& n : lat.subs)
      CHECK(submodule_product(n, whole_submodule(mod), lat) == n);
  }
  SECTION("Klein four module is not a multiplication module") {
    auto klein = FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2});
    auto klat = enumerate_submodules(klein);
    CHECK_FALSE(is_multiplication(klat));
    CHECK_THROWS_AS(
        submodule_product(klat.subs[1], klat.subs[2], klat),
        std::invalid_argument);
  }
  SECTION("M-rad(N) equals rad(N:M)M on multiplication modules") {
    for (int n : {8, 12, 18, 20}) {
      auto m = FiniteModule::regular(FiniteRing::residue(n));
      auto l = enumerate_submodules(m);
      REQUIRE(is_multiplication(l));
      for (const auto& s : l.subs) {
        auto lhs = m_radical(s, l);
        auto rhs = ideal_times_module(radical(colon_module(s)), m);
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("M-rad of a product splits componentwise") {
  auto m1 = FiniteModule::regular(FiniteRing::residue(4));
  auto m2 = FiniteModule::regular(FiniteRing::residue(9));
  auto prod = FiniteModule::product(m1, m2);
  auto lat1 = enumerate_submodules(m1);
  auto lat2 = enumerate_submodules(m2);
  auto latp = enumerate_submodules(prod);

  const int q2 = m2->size();
  for (const auto& n1 : lat1.subs)
    for (const auto& n2 : lat2.subs) {
      std::vector<int> gens;
      for (int x : n1.elements)
        for (int y : n2.elements) gens.push_back(x * q2 + y);
      auto n = submodule_span(prod, gens);
      auto r1 = m_radical(n1, lat1);
      auto r2 = m_radical(n2, lat2);
      auto rp = m_radical(n, latp);
      std::set<int> expected;
      for (int x : r1.elements)
        for (int y : r2.elements) expected.insert(x * q2 + y);
      CHECK(sub_set(rp) == expected);
    }
}

TEST_CASE("classification is independent of the generator presentation") {
  auto mod = FiniteModule::regular(FiniteRing::residue(24));
  auto lat = enumerate_submodules(mod);
  std::mt19937 rng(20240811);
  for (const auto& s : lat.subs) {
    auto base = classify_submodule(s, lat);
    for (int trial = 0; trial < 3; ++trial) {
      // Random generating set: sample elements of s until they span s.
      std::vector<int> gens;
      Submodule span = zero_submodule(mod);
      while (!(span == s)) {
        int pick = s.elements[rng() % s.elements.size()];
        gens.push_back(pick);
        span = submodule_span(mod, gens);
      }
      auto other = classify_submodule(span, lat);
      CHECK(base.proper == other.proper);
      CHECK(base.prime == other.prime);
      CHECK(base.primary == other.primary);
      CHECK(base.two_absorbing == other.two_absorbing);
      CHECK(base.two_absorbing_primary == other.two_absorbing_primary);
      CHECK(base.one_absorbing_primary == other.one_absorbing_primary);
      CHECK(base.colon_ideal == other.colon_ideal);
      CHECK(base.m_rad == other.m_rad);
    }
  }
}

TEST_CASE("implication chain on submodules of mixed corpora") {
  std::vector<ModulePtr> mods = {
      FiniteModule::regular(FiniteRing::residue(12)),
      FiniteModule::regular(FiniteRing::residue(30)),
      FiniteModule::product(FiniteModule::regular(FiniteRing::residue(2)),
                            FiniteModule::regular(FiniteRing::residue(3))),
      FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2}),
      FiniteModule::cyclic_over_integers({2, 4}),
  };
  for (const auto& mod : mods) {
    auto lat = enumerate_submodules(mod);
    for (const auto& s : lat.subs) {
      auto rep = classify_submodule(s, lat);
      if (rep.prime) CHECK(rep.primary);
      if (rep.prime) CHECK(rep.one_absorbing_primary);
      if (rep.one_absorbing_primary) CHECK(rep.two_absorbing_primary);
      if (rep.primary) CHECK(rep.two_absorbing_primary);
      if (rep.two_absorbing) CHECK(rep.two_absorbing_primary);
    }
  }
}

TEST_CASE("quotient module of Z/12 by <4>") {
  auto mod = FiniteModule::regular(FiniteRing::residue(12));
  auto q = FiniteModule::quotient(mod, submodule_span(mod, {4}));
  CHECK(q->size() == 4);
  auto lat = enumerate_submodules(q);
  CHECK(lat.subs.size() == 3);
}

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "modlab/hom.hpp"
#include "modlab/idealization.hpp"
#include "modlab/localize.hpp"

using namespace modlab;

namespace {
std::set<int> sub_set(const Submodule& s) { return {s.elements.begin(), s.elements.end()}; }
}  // namespace

TEST_CASE("module homomorphisms") {
  auto mod = FiniteModule::regular(FiniteRing::residue(12));
  auto n4 = submodule_span(mod, {4});

  SECTION("identity") {
    auto id = ModuleHom::identity(mod);
    CHECK(id.surjective());
    CHECK(id.image(n4) == n4);
    CHECK(id.preimage(n4) == n4);
  }
  SECTION("canonical projection") {
    auto [q, pi] = quotient_with_projection(mod, n4);
    CHECK(pi.surjective());
    CHECK(pi.kernel() == n4);
    // image of <2> is <2>/<4>, which has index 2 in the quotient
    auto img = pi.image(submodule_span(mod, {2}));
    CHECK(img.size() * 2 == q->size());
    // preimage of the zero submodule is the kernel
    CHECK(pi.preimage(zero_submodule(q)) == n4);
  }
  SECTION("scalar multiple endomorphism") {
    auto f = ModuleHom::scalar_multiple(mod, 2);
    CHECK_FALSE(f.surjective());
    CHECK(sub_set(f.kernel()) == std::set<int>{0, 6});
    CHECK_THROWS_AS(hom_transfer(f, HomDirection::image, n4), std::invalid_argument);
    CHECK(hom_transfer(f, HomDirection::preimage, n4) ==
          submodule_span(mod, {2}));
  }
  SECTION("generator images must extend to a linear map") {
    // 1 -> 1 is the identity on Z/12: fine.
    auto ok = ModuleHom::from_generator_images(mod, mod, {{1, 1}});
    CHECK(ok.surjective());
    // 1 -> 2 defines multiplication by 2: fine and not surjective.
    auto times2 = ModuleHom::from_generator_images(mod, mod, {{1, 2}});
    CHECK_FALSE(times2.surjective());
    // Into Z/8-as-Z/12-module nothing of order 12 can map to an element of
    // order 8, but a mixed-ring hom is rejected outright.
    auto other = FiniteModule::regular(FiniteRing::residue(8));
    CHECK_THROWS_AS(ModuleHom::from_generator_images(mod, other, {{1, 1}}),
                    std::invalid_argument);
  }
  SECTION("integer-base homs allow different exponents") {
    auto big = FiniteModule::cyclic_over_integers({4});
    auto small = FiniteModule::cyclic_over_integers({2});
    // reduction Z/4 -> Z/2
    auto red = ModuleHom::from_generator_images(big, small, {{1, 1}});
    CHECK(red.surjective());
    // 1 -> 1 from Z/2 into Z/4 is not linear (2*1 = 0 on the left, 2 on the right)
    CHECK_THROWS_AS(ModuleHom::from_generator_images(small, big, {{1, 1}}),
                    std::invalid_argument);
    // 1 -> 2 from Z/2 into Z/4 is the proper embedding
    auto emb = ModuleHom::from_generator_images(small, big, {{1, 2}});
    CHECK_FALSE(emb.surjective());
  }
}

TEST_CASE("radicals transfer along quotient projections") {
  auto mod = FiniteModule::regular(FiniteRing::residue(36));
  auto lat = enumerate_submodules(mod);
  for (const auto& n0 : lat.subs) {
    if (n0.is_whole()) continue;
    auto [q, pi] = quotient_with_projection(mod, n0);
    auto qlat = enumerate_submodules(q);
    for (const auto& n : lat.subs) {
      if (!submodule_subset(n0, n)) continue;  // epimorphism case needs ker <= N
      CHECK(pi.image(m_radical(n, lat)) == m_radical(pi.image(n), qlat));
    }
    for (const auto& k : qlat.subs) {
      CHECK(pi.preimage(m_radical(k, qlat)) == m_radical(pi.preimage(k), lat));
    }
  }
}

TEST_CASE("localization") {
  auto z12 = FiniteRing::residue(12);
  auto mod = FiniteModule::regular(z12);

  SECTION("S = {1} gives an isomorphic copy") {
    auto loc = localize(mod, {1});
    CHECK(loc.ring->size() == 12);
    CHECK(loc.module->size() == 12);
    // the canonical maps are bijective ring/module isomorphisms here
    std::set<int> im(loc.ring_map.begin(), loc.ring_map.end());
    CHECK(im.size() == 12);
  }
  SECTION("S = units gives an isomorphic copy") {
    auto loc = localize(mod, z12->units());
    CHECK(loc.ring->size() == 12);
    CHECK(loc.module->size() == 12);
  }
  SECTION("S = {1,3,9} collapses Z/12 to four elements") {
    auto loc = localize(mod, {1, 3, 9});
    CHECK(loc.ring->size() == 4);
    CHECK(loc.module->size() == 4);
  }
  SECTION("the maps are homomorphisms and S-images become units") {
    auto loc = localize(mod, {1, 3, 9});
    const auto& f = loc.ring_map;
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b) {
        CHECK(f[z12->add(a, b)] == loc.ring->add(f[a], f[b]));
        CHECK(f[z12->mul(a, b)] == loc.ring->mul(f[a], f[b]));
      }
    CHECK(f[1] == loc.ring->one());
    for (int s : {1, 3, 9}) CHECK(loc.ring->is_unit(f[s]));
    for (int r = 0; r < 12; ++r)
      for (int m = 0; m < 12; ++m)
        CHECK(loc.module_map[mod->act(r, m)] == loc.module->act(f[r], loc.module_map[m]));
  }
  SECTION("rejects bad S") {
    CHECK_THROWS_AS(localize(mod, {1, 2}), std::invalid_argument);     // not closed
    CHECK_THROWS_AS(localize(mod, {3, 9}), std::invalid_argument);     // missing 1
    CHECK_THROWS_AS(localize(mod, {0, 1}), std::invalid_argument);     // contains 0
    CHECK_THROWS_AS(localize(FiniteModule::cyclic_over_integers({4}), {1}),
                    std::invalid_argument);                            // integer base
  }
}

TEST_CASE("localizing Z/n at the powers of a single element has the arithmetic size") {
  // Independent oracle: inverting a inside Z/n collapses the ring to
  // Z/(n/g), where g collects every prime power of n whose prime divides a.
  for (int n = 2; n <= 30; ++n) {
    auto ring = FiniteRing::residue(n);
    auto mod = FiniteModule::regular(ring);
    for (int a = 1; a < n; ++a) {
      // closure of {a} under multiplication
      std::set<int> s{1};
      int p = a;
      for (int k = 0; k < n; ++k) {
        s.insert(p);
        p = p * a % n;
      }
      if (s.count(0)) continue;  // localization would collapse to nothing
      long long g = 1;
      for (auto [q, e] : factorize(n))
        if (a % q == 0) {
          for (int i = 0; i < e; ++i) g *= q;
        }
      auto loc = localize(mod, std::vector<int>(s.begin(), s.end()));
      INFO("n = " << n << ", a = " << a);
      CHECK(loc.ring->size() == n / g);
      CHECK(loc.module->size() == n / g);
      CHECK(loc.ring->is_unit(loc.ring_map[a]));
    }
  }
}

TEST_CASE("idealization") {
  auto z2 = FiniteRing::residue(2);
  auto reg2 = FiniteModule::regular(z2);
  auto idz = idealize(z2, reg2);

  SECTION("four elements and (1,1) is a unit") {
    REQUIRE(idz.ring->size() == 4);
    const int e11 = idz.index(1, 1);
    CHECK(idz.ring->is_unit(e11));
    // (1,1)(1,1) = (1, 1+1) = (1, 0) = identity
    CHECK(idz.ring->mul(e11, e11) == idz.ring->one());
  }
  SECTION("homogeneous ideals") {
    auto z4 = FiniteRing::residue(4);
    auto reg4 = FiniteModule::regular(z4);
    auto idz4 = idealize(z4, reg4);

    CHECK(homogeneous_ideal(idz4, zero_ideal(z4), zero_submodule(reg4)).is_zero());
    CHECK_THROWS_AS(
        homogeneous_ideal(idz4, ideal_span(z4, {1}), zero_submodule(reg4)),
        std::invalid_argument);  // IM not inside N

    // rad(I(+)N) = rad(I)(+)M, checked through radical() on the idealization.
    auto lat = enumerate_submodules(reg4);
    for (const auto& n : lat.subs) {
      for (int g = 0; g < 4; ++g) {
        auto ideal = ideal_span(z4, {g});
        bool homogeneous = true;
        for (int i : ideal.elements)
          for (int m = 0; m < 4 && homogeneous; ++m)
            if (!n.contains(reg4->act(i, m))) homogeneous = false;
        if (!homogeneous) continue;
        auto h = homogeneous_ideal(idz4, ideal, n);
        auto lhs = radical(h);
        auto expected_ideal = radical(ideal);
        std::vector<std::uint8_t> mask(idz4.ring->size(), 0);
        for (int i : expected_ideal.elements)
          for (int m = 0; m < 4; ++m) mask[idz4.index(i, m)] = 1;
        CHECK(lhs.mask == mask);
      }
    }
  }
  SECTION("mismatched module is rejected") {
    auto z3 = FiniteRing::residue(3);
    CHECK_THROWS_AS(idealize(z2, FiniteModule::regular(z3)), std::invalid_argument);
  }
}

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "modlab/covering.hpp"
#include "modlab/hom.hpp"
#include "modlab/idealization.hpp"
#include "modlab/intclassify.hpp"
#include "modlab/localize.hpp"
#include "modlab/module.hpp"

namespace modlab {

/// One module of a corpus with everything the laws consume precomputed:
/// the submodule lattice, per-submodule classification reports, the scalar
/// ring's ideal lattice, and structure flags.
struct CorpusModule {
  ModulePtr module;
  std::shared_ptr<SubmoduleLattice> lattice;
  std::vector<ClassificationReport> reports;  // aligned with lattice->subs
  std::vector<Ideal> ring_ideals;             // all ideals of the scalar ring
  bool multiplication = false;
  bool faithful = false;

  std::string sub_desc(int idx) const {
    const auto& s = lattice->subs[idx];
    std::string g = "[";
    for (size_t i = 0; i < s.generators.size(); ++i)
      g += (i ? "," : "") + module->name(s.generators[i]);
    return g + "] in " + module->descriptor();
  }
};

struct HomInstance {
  ModuleHom hom;
  std::shared_ptr<SubmoduleLattice> source_lat;
  std::shared_ptr<SubmoduleLattice> target_lat;
  std::vector<ClassificationReport> source_reports;
  std::vector<ClassificationReport> target_reports;
  std::string desc;
};

struct QuotientInstance {
  int module_index;             // source corpus module
  int by_index;                 // lattice index of N2
  ModuleHom projection;
  std::shared_ptr<SubmoduleLattice> quotient_lat;
  std::vector<ClassificationReport> quotient_reports;
};

struct ProductInstance {
  int product_module_index;  // index in Corpus::modules (the product module)
  ModulePtr factor1;
  std::shared_ptr<SubmoduleLattice> factor1_lat;
  std::vector<ClassificationReport> factor1_reports;
  int factor2_size;
};

struct LocalizationInstance {
  int module_index;
  std::vector<int> s_elements;
  Localization loc;
  std::shared_ptr<SubmoduleLattice> loc_lat;
  std::string desc;
};

struct IdealizationInstance {
  Idealization idz;
  Ideal ideal;      // I of the base ring
  Submodule sub;    // N of the base module, with IM inside N
  Ideal homogeneous;
  std::string desc;
};

struct CoveringInstance {
  int module_index;
  int target_index;
  std::vector<int> member_indices;
};

struct Corpus {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<CorpusModule> modules;
  std::vector<HomInstance> homs;
  std::vector<QuotientInstance> quotients;
  std::vector<ProductInstance> products;
  std::vector<LocalizationInstance> localizations;
  std::vector<IdealizationInstance> idealizations;
  std::vector<CoveringInstance> coverings;

  Covering covering(const CoveringInstance& ci) const {
    const auto& cm = modules[ci.module_index];
    Covering c;
    c.module = cm.module;
    c.target = cm.lattice->subs[ci.target_index];
    for (int mi : ci.member_indices) c.members.push_back(cm.lattice->subs[mi]);
    return c;
  }
};

namespace detail {

inline CorpusModule make_corpus_module(const ModulePtr& mod, int lattice_cap = 4096) {
  CorpusModule cm;
  cm.module = mod;
  cm.lattice = std::make_shared<SubmoduleLattice>(enumerate_submodules(mod, lattice_cap));
  cm.reports.reserve(cm.lattice->subs.size());
  for (const auto& s : cm.lattice->subs) cm.reports.push_back(classify_submodule(s, *cm.lattice));
  auto ring_lat = enumerate_submodules(FiniteModule::regular(mod->scalar_ring()), lattice_cap);
  for (const auto& s : ring_lat.subs) {
    std::vector<std::uint8_t> mask = s.mask;
    cm.ring_ideals.push_back(make_ideal_from_mask(mod->scalar_ring(), std::move(mask)));
  }
  cm.multiplication = is_multiplication(*cm.lattice);
  cm.faithful = is_faithful(mod);
  return cm;
}

inline std::vector<ClassificationReport> classify_all(const SubmoduleLattice& lat) {
  std::vector<ClassificationReport> out;
  out.reserve(lat.subs.size());
  for (const auto& s : lat.subs) out.push_back(classify_submodule(s, lat));
  return out;
}

/// All multiplicatively closed subsets generated by one element (plus 1),
/// deduplicated, skipping any set that reaches 0.
inline std::vector<std::vector<int>> closed_sets(const RingPtr& ring) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<std::uint8_t>> seen;
  auto add_set = [&](std::vector<std::uint8_t> mask) {
    if (mask[ring->zero()]) return;
    for (const auto& m : seen)
      if (m == mask) return;
    seen.push_back(mask);
    out.push_back(mask_elements(mask));
  };
  {
    std::vector<std::uint8_t> units(ring->size(), 0);
    units[ring->one()] = 1;
    add_set(units);
    for (int u : ring->units()) units[u] = 1;
    add_set(units);
  }
  for (int a = 0; a < ring->size(); ++a) {
    std::vector<std::uint8_t> mask(ring->size(), 0);
    mask[ring->one()] = 1;
    int p = a;
    for (int k = 0; k < ring->size(); ++k) {
      mask[p] = 1;
      p = ring->mul(p, a);
    }
    add_set(std::move(mask));
  }
  return out;
}

inline void add_hom_instances(Corpus& corpus, int module_index) {
  const CorpusModule& cm = corpus.modules[module_index];
  const auto& mod = cm.module;
  // identity
  corpus.homs.push_back({ModuleHom::identity(mod), cm.lattice, cm.lattice, cm.reports,
                         cm.reports, "id on " + mod->descriptor()});
  // scalar multiples (skip 1 = identity)
  for (int r = 0; r < mod->scalar_count(); ++r) {
    if (r == mod->scalar_ring()->one()) continue;
    corpus.homs.push_back({ModuleHom::scalar_multiple(mod, r), cm.lattice, cm.lattice, cm.reports,
                           cm.reports,
                           "mult by " + mod->scalar_name(r) + " on " + mod->descriptor()});
  }
  // canonical projections onto quotients by each proper submodule
  for (size_t i = 0; i < cm.lattice->subs.size(); ++i) {
    const auto& n2 = cm.lattice->subs[i];
    if (n2.is_whole()) continue;
    auto [q, pi] = quotient_with_projection(mod, n2);
    auto qlat = std::make_shared<SubmoduleLattice>(enumerate_submodules(q));
    auto qreports = classify_all(*qlat);
    corpus.homs.push_back({pi, cm.lattice, qlat, cm.reports, qreports,
                           "projection " + q->descriptor()});
    corpus.quotients.push_back(
        {module_index, static_cast<int>(i), pi, qlat, std::move(qreports)});
  }
}

inline void add_localization_instances(Corpus& corpus, int module_index) {
  const CorpusModule& cm = corpus.modules[module_index];
  for (auto& s : closed_sets(cm.module->scalar_ring())) {
    LocalizationInstance li;
    li.module_index = module_index;
    li.s_elements = s;
    li.loc = localize(cm.module, s);
    li.loc_lat = std::make_shared<SubmoduleLattice>(enumerate_submodules(li.loc.module));
    li.desc = cm.module->descriptor() + " at S of size " + std::to_string(s.size());
    corpus.localizations.push_back(std::move(li));
  }
}

inline void add_covering_instances(Corpus& corpus, int module_index, int max_members) {
  const CorpusModule& cm = corpus.modules[module_index];
  const int L = static_cast<int>(cm.lattice->subs.size());
  std::vector<int> proper;
  for (int i = 0; i < L; ++i)
    if (!cm.lattice->subs[i].is_whole()) proper.push_back(i);
  const int P = static_cast<int>(proper.size());
  // subsets of proper submodules, sizes 2..max_members, in index order
  std::vector<int> pick;
  std::function<void(int, int)> rec = [&](int start, int want) {
    if (want == 0) {
      for (int t = 0; t < L; ++t) {
        CoveringInstance ci{module_index, t, {}};
        for (int p : pick) ci.member_indices.push_back(proper[p]);
        Covering c = corpus.covering(ci);
        if (covers(c)) corpus.coverings.push_back(std::move(ci));
      }
      return;
    }
    for (int i = start; i <= P - want; ++i) {
      pick.push_back(i);
      rec(i + 1, want - 1);
      pick.pop_back();
    }
  };
  for (int sz = 2; sz <= max_members && sz <= P; ++sz) rec(0, sz);
}

inline void add_idealization_instances(Corpus& corpus, const RingPtr& ring) {
  auto mod = FiniteModule::regular(ring);
  auto idz = idealize(ring, mod);
  auto lat = enumerate_submodules(mod);
  auto ring_lat = enumerate_submodules(FiniteModule::regular(ring));
  for (const auto& is : ring_lat.subs) {
    std::vector<std::uint8_t> imask = is.mask;
    Ideal ideal = make_ideal_from_mask(ring, std::move(imask));
    for (const auto& n : lat.subs) {
      bool homogeneous = true;
      for (int i : ideal.elements)
        for (int m = 0; m < mod->size() && homogeneous; ++m)
          if (!n.contains(mod->act(i, m))) homogeneous = false;
      if (!homogeneous) continue;
      IdealizationInstance inst{idz, ideal, n, homogeneous_ideal(idz, ideal, n),
                                "idealization of " + ring->descriptor()};
      corpus.idealizations.push_back(std::move(inst));
    }
  }
}

}  // namespace detail

/// Named corpora.
///
///   small-finite : regular Z/n for n <= 30, products over {2,3,5}, explicit
///                  modules (Klein four over F2 and over Z, Z2 x Z4 over Z),
///                  two quotient modules, an idealization-ring module, plus
///                  hom/quotient/localization/idealization/covering
///                  instances on the small members.
///   zn-60        : regular Z/n for 2 <= n <= 60 (laws over submodules and
///                  ideals only).
///   covering     : exhaustive covering searches over regular Z/12, Z/30,
///                  Z/36, the Klein four module, and the module over the
///                  idealization ring F2(+)V whose maximal ideal is a union
///                  of three lines.
inline Corpus build_corpus(const std::string& name, std::uint64_t seed = 0) {
  Corpus corpus;
  corpus.name = name;
  corpus.seed = seed;

  auto add_regular = [&](int n) {
    corpus.modules.push_back(detail::make_corpus_module(FiniteModule::regular(FiniteRing::residue(n))));
  };

  if (name == "zn-60") {
    for (int n = 2; n <= 60; ++n) add_regular(n);
    return corpus;
  }

  if (name == "covering") {
    for (int n : {12, 30, 36}) add_regular(n);
    corpus.modules.push_back(detail::make_corpus_module(
        FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2})));
    {
      auto f2 = FiniteRing::residue(2);
      auto klein = FiniteModule::cyclic_over_ring(f2, {2, 2});
      auto idz = idealize(f2, klein);
      corpus.modules.push_back(detail::make_corpus_module(FiniteModule::regular(idz.ring)));
    }
    for (int i = 0; i < static_cast<int>(corpus.modules.size()); ++i) {
      const int subs = static_cast<int>(corpus.modules[i].lattice->subs.size());
      detail::add_covering_instances(corpus, i, subs <= 7 ? 4 : 3);
    }
    return corpus;
  }

  if (name != "small-finite") throw std::invalid_argument("unknown corpus: " + name);

  for (int n = 2; n <= 30; ++n) add_regular(n);
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 5}, {3, 3}, {3, 5}, {5, 5}}) {
    auto m1 = FiniteModule::regular(FiniteRing::residue(p));
    auto m2 = FiniteModule::regular(FiniteRing::residue(q));
    auto prod = FiniteModule::product(m1, m2);
    CorpusModule cm = detail::make_corpus_module(prod);
    corpus.modules.push_back(std::move(cm));
    ProductInstance pi;
    pi.product_module_index = static_cast<int>(corpus.modules.size()) - 1;
    pi.factor1 = m1;
    pi.factor1_lat = std::make_shared<SubmoduleLattice>(enumerate_submodules(m1));
    pi.factor1_reports = detail::classify_all(*pi.factor1_lat);
    pi.factor2_size = m2->size();
    corpus.products.push_back(std::move(pi));
  }
  // a product with non-prime factors exercises the same laws off the field case
  {
    auto m1 = FiniteModule::regular(FiniteRing::residue(4));
    auto m2 = FiniteModule::regular(FiniteRing::residue(9));
    auto prod = FiniteModule::product(m1, m2);
    corpus.modules.push_back(detail::make_corpus_module(prod));
    ProductInstance pi;
    pi.product_module_index = static_cast<int>(corpus.modules.size()) - 1;
    pi.factor1 = m1;
    pi.factor1_lat = std::make_shared<SubmoduleLattice>(enumerate_submodules(m1));
    pi.factor1_reports = detail::classify_all(*pi.factor1_lat);
    pi.factor2_size = m2->size();
    corpus.products.push_back(std::move(pi));
  }

  // explicit modules
  corpus.modules.push_back(detail::make_corpus_module(
      FiniteModule::cyclic_over_ring(FiniteRing::residue(2), {2, 2})));
  corpus.modules.push_back(
      detail::make_corpus_module(FiniteModule::cyclic_over_integers({2, 2})));
  corpus.modules.push_back(
      detail::make_corpus_module(FiniteModule::cyclic_over_integers({2, 4})));
  corpus.modules.push_back(
      detail::make_corpus_module(FiniteModule::cyclic_over_integers({2, 2, 3})));

  // quotient modules as first-class corpus members
  {
    auto m12 = FiniteModule::regular(FiniteRing::residue(12));
    corpus.modules.push_back(
        detail::make_corpus_module(FiniteModule::quotient(m12, submodule_span(m12, {4}))));
    auto m36 = FiniteModule::regular(FiniteRing::residue(36));
    corpus.modules.push_back(
        detail::make_corpus_module(FiniteModule::quotient(m36, submodule_span(m36, {6}))));
  }

  // a local ring whose maximal ideal needs two generators; its regular
  // module carries an efficient three-member covering
  {
    auto f2 = FiniteRing::residue(2);
    auto klein = FiniteModule::cyclic_over_ring(f2, {2, 2});
    auto idz = idealize(f2, klein);
    corpus.modules.push_back(detail::make_corpus_module(FiniteModule::regular(idz.ring)));
  }

  // instance families on the small members
  for (int i = 0; i < static_cast<int>(corpus.modules.size()); ++i) {
    const auto& cm = corpus.modules[i];
    if (cm.module->size() <= 16) detail::add_hom_instances(corpus, i);
    if (!cm.module->integer_base() && cm.module->size() <= 16)
      detail::add_localization_instances(corpus, i);
    if (cm.module->size() <= 16)
      detail::add_covering_instances(corpus, i,
                                     cm.lattice->subs.size() <= 7 ? 4 : 3);
  }
  detail::add_idealization_instances(corpus, FiniteRing::residue(2));
  detail::add_idealization_instances(corpus, FiniteRing::residue(4));
  detail::add_idealization_instances(corpus, FiniteRing::residue(6));

  return corpus;
}

inline std::vector<std::string> corpus_names() { return {"small-finite", "zn-60", "covering"}; }

}  // namespace modlab

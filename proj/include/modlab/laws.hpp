#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "modlab/corpus.hpp"
#include "modlab/intclassify.hpp"

namespace modlab {

enum class InstanceKind { ideal, submodule, hom, covering, construction };

inline const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::ideal: return "ideal";
    case InstanceKind::submodule: return "submodule";
    case InstanceKind::hom: return "hom";
    case InstanceKind::covering: return "covering";
    case InstanceKind::construction: return "construction";
  }
  return "?";
}

struct Violation {
  std::string instance;
  std::string detail;
};

struct LawCounters {
  long long instances_checked = 0;
  long long non_vacuous = 0;
  std::vector<Violation> violations;
};

/// Result of running one law over a corpus.  `faithful` carries the
/// restricted re-run for laws whose stated hypothesis class is wider than
/// the one their justification uses; both views are reported.
struct LawReport {
  std::string law_id;
  std::string corpus;
  LawCounters main;
  std::optional<LawCounters> faithful;
  bool vacuous_expected = false;
  double runtime_ms = 0;

  std::string status() const {
    if (!main.violations.empty() || (faithful && !faithful->violations.empty()))
      return "violated";
    if (main.instances_checked == 0) return "skipped";  // corpus has no such instances
    if (main.non_vacuous == 0) return vacuous_expected ? "vacuous-expected" : "vacuous";
    return "pass";
  }
  bool ok() const {
    auto s = status();
    return s == "pass" || s == "vacuous-expected" || s == "skipped";
  }
};

/// Collector handed to a law's run function.
class LawRun {
 public:
  LawRun(LawCounters& counters, long long budget, bool faithful_only)
      : counters_(counters), budget_(budget), faithful_only_(faithful_only) {}

  bool done() const { return counters_.instances_checked >= budget_; }
  bool faithful_only() const { return faithful_only_; }

  /// Record one instance.  `describe` is only invoked on violation.
  void record(bool hypothesis_held, bool conclusion_held,
              const std::function<Violation()>& describe) {
    if (done()) return;
    ++counters_.instances_checked;
    if (!hypothesis_held) return;
    ++counters_.non_vacuous;
    if (!conclusion_held && counters_.violations.size() < 32)
      counters_.violations.push_back(describe());
  }

 private:
  LawCounters& counters_;
  long long budget_;
  bool faithful_only_;
};

struct Law {
  std::string id;
  std::string statement;
  InstanceKind kind;
  bool vacuous_expected = false;
  bool dual_faithful = false;  // re-run restricted to faithful modules
  std::function<void(const Corpus&, LawRun&)> run;
};

inline LawReport run_law(const Law& law, const Corpus& corpus,
                         long long budget = 1'000'000'000) {
  LawReport rep;
  rep.law_id = law.id;
  rep.corpus = corpus.name;
  rep.vacuous_expected = law.vacuous_expected;
  const auto t0 = std::chrono::steady_clock::now();
  {
    LawRun run(rep.main, budget, false);
    law.run(corpus, run);
  }
  if (law.dual_faithful) {
    rep.faithful.emplace();
    LawRun run(*rep.faithful, budget, true);
    law.run(corpus, run);
  }
  rep.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Law catalog
// ---------------------------------------------------------------------------

namespace lawdetail {

inline std::string flag_list(const ClassificationReport& r) {
  std::ostringstream os;
  os << "prime=" << r.prime << " primary=" << r.primary << " 2a=" << r.two_absorbing
     << " 2ap=" << r.two_absorbing_primary << " 1ap=" << r.one_absorbing_primary;
  return os.str();
}

/// Clause views of the three-slot absorption equivalence, each evaluated by
/// its own loop structure.
struct FourClauses {
  bool definitional;      // abm in N => ab in (N:M) or m in M-rad(N)
  bool colon_containment; // ab outside (N:M) => (N :_M ab) inside M-rad(N)
  bool submodule_form;    // abK inside N => ab in (N:M) or K inside M-rad(N)
  bool ideal_form;        // I1 I2 K inside N => I1 I2 inside (N:M) or K inside M-rad(N)
};

inline FourClauses four_clauses(const CorpusModule& cm, int sub_idx) {
  const FiniteModule& mod = *cm.module;
  const Submodule& n = cm.lattice->subs[sub_idx];
  const ClassificationReport& rep = cm.reports[sub_idx];
  const Ideal& colon = rep.colon_ideal;
  const Submodule& mrad = rep.m_rad;
  FourClauses out{true, true, true, true};

  out.definitional = rep.one_absorbing_primary;

  const auto& nu = mod.absorbing_scalars();
  // distinct scalar products d = ab over non-unit pairs
  std::map<int, bool> colon_d_in_mrad;
  auto colon_ok = [&](int d) {
    auto it = colon_d_in_mrad.find(d);
    if (it == colon_d_in_mrad.end()) {
      bool inside = true;
      for (int m = 0; m < mod.size(); ++m)
        if (n.contains(mod.act(d, m)) && !mrad.contains(m)) {
          inside = false;
          break;
        }
      it = colon_d_in_mrad.emplace(d, inside).first;
    }
    return it->second;
  };
  for (size_t i = 0; i < nu.size() && out.colon_containment; ++i)
    for (size_t j = i; j < nu.size(); ++j) {
      const int d = mod.scalar_ring()->mul(nu[i], nu[j]);
      if (colon.contains(d)) continue;
      if (!colon_ok(d)) {
        out.colon_containment = false;
        break;
      }
    }

  // submodule form: K runs over the enumerated lattice
  for (size_t i = 0; i < nu.size() && out.submodule_form; ++i)
    for (size_t j = i; j < nu.size() && out.submodule_form; ++j) {
      const int d = mod.scalar_ring()->mul(nu[i], nu[j]);
      if (colon.contains(d)) continue;
      for (const auto& k : cm.lattice->subs) {
        bool dk_in_n = true;
        for (int x : k.elements)
          if (!n.contains(mod.act(d, x))) {
            dk_in_n = false;
            break;
          }
        if (dk_in_n && !submodule_subset(k, mrad)) {
          out.submodule_form = false;
          break;
        }
      }
    }

  // ideal form: proper ideal pairs for a ring base; over the integers every
  // residue ideal of Z/e is the image of a proper ideal of Z, so all of
  // them participate
  std::vector<const Ideal*> ideals;
  for (const auto& ideal : cm.ring_ideals)
    if (mod.integer_base() || !ideal.is_whole()) ideals.push_back(&ideal);
  for (size_t a = 0; a < ideals.size() && out.ideal_form; ++a)
    for (size_t b = a; b < ideals.size() && out.ideal_form; ++b) {
      Ideal prod = ideal_combine(*ideals[a], *ideals[b], IdealOp::product);
      if (ideal_subset(prod, colon)) continue;
      for (const auto& k : cm.lattice->subs) {
        bool in_n = true;
        for (int d : prod.elements) {
          for (int x : k.elements)
            if (!n.contains(mod.act(d, x))) {
              in_n = false;
              break;
            }
          if (!in_n) break;
        }
        if (in_n && !submodule_subset(k, mrad)) {
          out.ideal_form = false;
          break;
        }
      }
    }
  return out;
}

inline void for_each_sub(const Corpus& corpus, LawRun& run,
                         const std::function<void(const CorpusModule&, int)>& f) {
  for (const auto& cm : corpus.modules) {
    if (run.faithful_only() && !cm.faithful) continue;
    for (size_t i = 0; i < cm.lattice->subs.size(); ++i) {
      if (run.done()) return;
      f(cm, static_cast<int>(i));
    }
  }
}

}  // namespace lawdetail

inline const std::vector<Law>& law_catalog() {
  static const std::vector<Law> catalog = [] {
    std::vector<Law> laws;
    using lawdetail::flag_list;
    using lawdetail::for_each_sub;

    laws.push_back(Law{
        "L-CHAIN",
        "prime => 1-absorbing primary => 2-absorbing primary, and prime => primary "
        "=> 2-absorbing primary, on every proper submodule",
        InstanceKind::submodule, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for_each_sub(corpus, run, [&](const CorpusModule& cm, int i) {
            const auto& r = cm.reports[i];
            const bool hyp = r.proper && (r.prime || r.primary || r.one_absorbing_primary);
            bool ok = true;
            if (r.prime && !r.primary) ok = false;
            if (r.prime && !r.one_absorbing_primary) ok = false;
            if (r.primary && !r.two_absorbing_primary) ok = false;
            if (r.one_absorbing_primary && !r.two_absorbing_primary) ok = false;
            run.record(hyp, ok, [&] { return Violation{cm.sub_desc(i), flag_list(r)}; });
          });
        }});

    laws.push_back(Law{
        "L-L1",
        "four equivalent forms of the 1-absorbing primary condition agree: the "
        "definitional check, the colon containment (N :_M ab) <= M-rad(N), the "
        "submodule form over K, and the ideal form over pairs of ideals",
        InstanceKind::submodule, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for_each_sub(corpus, run, [&](const CorpusModule& cm, int i) {
            const auto& r = cm.reports[i];
            if (!r.proper) {
              run.record(false, true, nullptr);
              return;
            }
            auto cl = lawdetail::four_clauses(cm, i);
            const bool ok = cl.definitional == cl.colon_containment &&
                            cl.definitional == cl.submodule_form &&
                            cl.definitional == cl.ideal_form;
            run.record(true, ok, [&] {
              std::ostringstream os;
              os << "clauses: definitional=" << cl.definitional
                 << " colon=" << cl.colon_containment << " submodule=" << cl.submodule_form
                 << " ideal=" << cl.ideal_form;
              return Violation{cm.sub_desc(i), os.str()};
            });
          });
        }});

    laws.push_back(Law{
        "L-TN",
        "on a finitely generated multiplication module, N is 1-absorbing primary "
        "iff N1 N2 N3 <= N forces N1 N2 <= N or N3 <= M-rad(N)",
        InstanceKind::submodule, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& cm : corpus.modules) {
            if (run.faithful_only() && !cm.faithful) continue;
            if (!cm.multiplication) continue;
            const int L = static_cast<int>(cm.lattice->subs.size());
            // product table over lattice indices
            std::vector<std::vector<int>> prod(L, std::vector<int>(L, -1));
            for (int a = 0; a < L; ++a)
              for (int b = a; b < L; ++b) {
                auto p = submodule_product(cm.lattice->subs[a], cm.lattice->subs[b], *cm.lattice);
                int idx = cm.lattice->index_of(p.mask);
                prod[a][b] = prod[b][a] = idx;
              }
            for (int i = 0; i < L; ++i) {
              if (run.done()) return;
              const auto& r = cm.reports[i];
              if (!r.proper) {
                run.record(false, true, nullptr);
                continue;
              }
              const auto& n = cm.lattice->subs[i];
              bool product_form = true;
              for (int a = 0; a < L && product_form; ++a)
                for (int b = a; b < L && product_form; ++b)
                  for (int c = 0; c < L; ++c) {
                    const int abc = prod[prod[a][b]][c];
                    if (!submodule_subset(cm.lattice->subs[abc], n)) continue;
                    if (submodule_subset(cm.lattice->subs[prod[a][b]], n)) continue;
                    if (submodule_subset(cm.lattice->subs[c], r.m_rad)) continue;
                    product_form = false;
                    break;
                  }
              run.record(true, product_form == r.one_absorbing_primary, [&] {
                std::ostringstream os;
                os << "definitional=" << r.one_absorbing_primary
                   << " product-form=" << product_form;
                return Violation{cm.sub_desc(i), os.str()};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-LEM9",
        "on a finitely generated faithful multiplication module, (IM : M) = I "
        "for every ideal I",
        InstanceKind::ideal, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& cm : corpus.modules) {
            for (const auto& ideal : cm.ring_ideals) {
              if (run.done()) return;
              const bool hyp = cm.multiplication && cm.faithful;
              bool ok = true;
              if (hyp) {
                auto im = ideal_times_module(ideal, cm.module);
                ok = colon_module(im) == ideal;
              }
              run.record(hyp, ok, [&] {
                return Violation{"ideal of size " + std::to_string(ideal.size()) + " in " +
                                     cm.module->descriptor(),
                                 "(IM : M) differs from I"};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-T0a",
        "on a finitely generated faithful multiplication module, a proper ideal I "
        "is 1-absorbing primary iff IM is a 1-absorbing primary submodule",
        InstanceKind::ideal, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& cm : corpus.modules) {
            for (const auto& ideal : cm.ring_ideals) {
              if (run.done()) return;
              const bool hyp = cm.multiplication && cm.faithful && !ideal.is_whole();
              bool ok = true;
              if (hyp) {
                auto ideal_rep = classify_ideal(ideal);
                auto im = ideal_times_module(ideal, cm.module);
                int idx = cm.lattice->index_of(im.mask);
                ok = ideal_rep.one_absorbing_primary ==
                     cm.reports[idx].one_absorbing_primary;
              }
              run.record(hyp, ok, [&] {
                return Violation{"ideal in " + cm.module->descriptor(),
                                 "ideal and IM disagree on the 1-absorbing primary flag"};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-T0b",
        "on a finitely generated faithful multiplication module, a proper N is "
        "1-absorbing primary iff (N : M) is a 1-absorbing primary ideal",
        InstanceKind::submodule, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for_each_sub(corpus, run, [&](const CorpusModule& cm, int i) {
            const auto& r = cm.reports[i];
            const bool hyp = cm.multiplication && cm.faithful && r.proper;
            bool ok = true;
            if (hyp)
              ok = r.one_absorbing_primary == classify_ideal(r.colon_ideal).one_absorbing_primary;
            run.record(hyp, ok, [&] {
              return Violation{cm.sub_desc(i),
                               "submodule and (N : M) disagree on the 1-absorbing primary flag"};
            });
          });
        }});

    laws.push_back(Law{
        "L-T0c",
        "on a finitely generated faithful multiplication module, a proper N is "
        "1-absorbing primary iff N = IM for some 1-absorbing primary ideal I",
        InstanceKind::submodule, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for_each_sub(corpus, run, [&](const CorpusModule& cm, int i) {
            const auto& r = cm.reports[i];
            const bool hyp = cm.multiplication && cm.faithful && r.proper;
            bool ok = true;
            if (hyp) {
              bool witness = false;
              for (const auto& ideal : cm.ring_ideals) {
                if (ideal.is_whole()) continue;
                if (!classify_ideal(ideal).one_absorbing_primary) continue;
                auto im = ideal_times_module(ideal, cm.module);
                if (im == cm.lattice->subs[i]) {
                  witness = true;
                  break;
                }
              }
              ok = witness == r.one_absorbing_primary;
            }
            run.record(hyp, ok, [&] {
              return Violation{cm.sub_desc(i),
                               "existence of a 1-absorbing primary presentation disagrees"};
            });
          });
        }});

    laws.push_back(Law{
        "L-T1a",
        "if N is 1-absorbing primary in a finitely generated multiplication "
        "module, rad(N : M) is a prime ideal",
        InstanceKind::submodule, false, true,
        [](const Corpus& corpus, LawRun& run) {
          for_each_sub(corpus, run, [&](const CorpusModule& cm, int i) {
            const auto& r = cm.reports[i];
            const bool hyp = cm.multiplication && r.proper && r.one_absorbing_primary;
            bool ok = !hyp || ideal_is_prime(r.colon_radical);
            run.record(hyp, ok, [&] {
              return Violation{cm.sub_desc(i), "rad(N : M) is not prime"};
            });
          });
        }});

    laws.push_back(Law{
        "L-T1b",
        "if N is 1-absorbing primary in a finitely generated multiplication "
        "module, rad(N : m) is a prime ideal containing rad(N : M) for every m "
        "outside M-rad(N)",
        InstanceKind::submodule, false, true,
        [](const Corpus& corpus, LawRun& run) {
          for_each_sub(corpus, run, [&](const CorpusModule& cm, int i) {
            const auto& r = cm.reports[i];
            const bool hyp = cm.multiplication && r.proper && r.one_absorbing_primary;
            bool ok = true;
            std::string bad;
            if (hyp) {
              const auto& n = cm.lattice->subs[i];
              for (int m = 0; m < cm.module->size(); ++m) {
                if (r.m_rad.contains(m)) continue;
                Ideal rad_m = radical(colon_element(n, m));
                if (!ideal_is_prime(rad_m) || !ideal_subset(r.colon_radical, rad_m)) {
                  ok = false;
                  bad = "m = " + cm.module->name(m);
                  break;
                }
              }
            }
            run.record(hyp, ok, [&] { return Violation{cm.sub_desc(i), bad}; });
          });
        }});

    laws.push_back(Law{
        "L-T1c",
        "if N is 1-absorbing primary in a finitely generated multiplication "
        "module, M-rad(N) is a prime submodule",
        InstanceKind::submodule, false, true,
        [](const Corpus& corpus, LawRun& run) {
          for_each_sub(corpus, run, [&](const CorpusModule& cm, int i) {
            const auto& r = cm.reports[i];
            const bool hyp = cm.multiplication && r.proper && r.one_absorbing_primary;
            bool ok = !hyp || is_prime_submodule(r.m_rad);
            run.record(hyp, ok, [&] {
              return Violation{cm.sub_desc(i), "M-rad(N) is not a prime submodule"};
            });
          });
        }});

    laws.push_back(Law{
        "L-INT",
        "in a multiplication module, an intersection of P-1-absorbing primary "
        "submodules sharing the same prime P is again P-1-absorbing primary",
        InstanceKind::submodule, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& cm : corpus.modules) {
            if (run.faithful_only() && !cm.faithful) continue;
            if (!cm.multiplication) continue;
            // group by the shared prime P = rad(N : M)
            std::map<std::vector<std::uint8_t>, std::vector<int>> groups;
            for (size_t i = 0; i < cm.lattice->subs.size(); ++i)
              if (cm.reports[i].p_one_absorbing_primary_for)
                groups[cm.reports[i].p_one_absorbing_primary_for->mask].push_back(
                    static_cast<int>(i));
            for (const auto& [pmask, members] : groups) {
              if (members.size() < 2) continue;
              auto check_family = [&](const std::vector<int>& family) {
                if (run.done()) return;
                Submodule meet = cm.lattice->subs[family[0]];
                for (size_t t = 1; t < family.size(); ++t)
                  meet = submodule_intersection(meet, cm.lattice->subs[family[t]]);
                int idx = cm.lattice->index_of(meet.mask);
                const auto& mrep = cm.reports[idx];
                bool ok = mrep.one_absorbing_primary &&
                          mrep.p_one_absorbing_primary_for.has_value() &&
                          mrep.p_one_absorbing_primary_for->mask == pmask;
                run.record(true, ok, [&] {
                  return Violation{"family of " + std::to_string(family.size()) +
                                       " submodules in " + cm.module->descriptor(),
                                   "intersection lost the P-1-absorbing primary property"};
                });
              };
              for (size_t a = 0; a < members.size(); ++a)
                for (size_t b = a + 1; b < members.size(); ++b)
                  check_family({members[a], members[b]});
              if (members.size() > 2) check_family(members);
            }
          }
        }});

    laws.push_back(Law{
        "L-RAD-HOM",
        "for a surjective homomorphism f, f(M1-rad(N)) = M2-rad(f(N)) whenever "
        "ker f <= N, and f^{-1}(M2-rad(K)) = M1-rad(f^{-1}(K)) for every K",
        InstanceKind::hom, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& hi : corpus.homs) {
            const bool epi = hi.hom.surjective();
            Submodule ker = hi.hom.kernel();
            for (size_t i = 0; i < hi.source_lat->subs.size(); ++i) {
              if (run.done()) return;
              const auto& n = hi.source_lat->subs[i];
              const bool hyp = epi && submodule_subset(ker, n);
              bool ok = true;
              if (hyp) {
                auto lhs = hi.hom.image(m_radical(n, *hi.source_lat));
                auto rhs = m_radical(hi.hom.image(n), *hi.target_lat);
                ok = lhs == rhs;
              }
              run.record(hyp, ok, [&] {
                return Violation{hi.desc, "image of the radical differs from the radical of the image"};
              });
            }
            for (size_t i = 0; i < hi.target_lat->subs.size(); ++i) {
              if (run.done()) return;
              const auto& k = hi.target_lat->subs[i];
              bool ok = true;
              if (epi) {
                auto lhs = hi.hom.preimage(m_radical(k, *hi.target_lat));
                auto rhs = m_radical(hi.hom.preimage(k), *hi.source_lat);
                ok = lhs == rhs;
              }
              run.record(epi, ok, [&] {
                return Violation{hi.desc,
                                 "preimage of the radical differs from the radical of the preimage"};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-F1",
        "the preimage of a 1-absorbing primary submodule under a module "
        "homomorphism is 1-absorbing primary whenever it is proper",
        InstanceKind::hom, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& hi : corpus.homs) {
            for (size_t i = 0; i < hi.target_lat->subs.size(); ++i) {
              if (run.done()) return;
              const auto& n2 = hi.target_lat->subs[i];
              if (!hi.target_reports[i].one_absorbing_primary) {
                run.record(false, true, nullptr);
                continue;
              }
              auto pre = hi.hom.preimage(n2);
              const bool hyp = !pre.is_whole();
              bool ok = !hyp || classify_submodule(pre, *hi.source_lat).one_absorbing_primary;
              run.record(hyp, ok, [&] {
                return Violation{hi.desc, "preimage lost the 1-absorbing primary property"};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-F2",
        "the image of a 1-absorbing primary submodule containing the kernel of "
        "a surjective homomorphism is 1-absorbing primary",
        InstanceKind::hom, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& hi : corpus.homs) {
            const bool epi = hi.hom.surjective();
            Submodule ker = hi.hom.kernel();
            for (size_t i = 0; i < hi.source_lat->subs.size(); ++i) {
              if (run.done()) return;
              const auto& n1 = hi.source_lat->subs[i];
              const bool hyp = epi && hi.source_reports[i].one_absorbing_primary &&
                               submodule_subset(ker, n1);
              bool ok = true;
              if (hyp) ok = classify_submodule(hi.hom.image(n1), *hi.target_lat)
                               .one_absorbing_primary;
              run.record(hyp, ok, [&] {
                return Violation{hi.desc, "image lost the 1-absorbing primary property"};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-CQ",
        "for N2 <= N1, N1 is 1-absorbing primary in M iff N1/N2 is 1-absorbing "
        "primary in M/N2 (both directions)",
        InstanceKind::hom, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& qi : corpus.quotients) {
            const auto& cm = corpus.modules[qi.module_index];
            const auto& n2 = cm.lattice->subs[qi.by_index];
            for (size_t i = 0; i < cm.lattice->subs.size(); ++i) {
              if (run.done()) return;
              const auto& n1 = cm.lattice->subs[i];
              if (n1.is_whole() || !submodule_subset(n2, n1)) {
                run.record(false, true, nullptr);
                continue;
              }
              auto image = qi.projection.image(n1);
              int qidx = qi.quotient_lat->index_of(image.mask);
              const bool upstairs = cm.reports[i].one_absorbing_primary;
              const bool downstairs = qi.quotient_reports[qidx].one_absorbing_primary;
              run.record(upstairs || downstairs, upstairs == downstairs, [&] {
                std::ostringstream os;
                os << "N1 flag=" << upstairs << " N1/N2 flag=" << downstairs;
                return Violation{cm.sub_desc(static_cast<int>(i)) + " modulo " +
                                     cm.sub_desc(qi.by_index),
                                 os.str()};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-TC",
        "if N1 x M2 is 1-absorbing primary in M1 x M2 over a product ring, then "
        "N1 is 1-absorbing primary in M1",
        InstanceKind::construction, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& pi : corpus.products) {
            const auto& cm = corpus.modules[pi.product_module_index];
            for (size_t i = 0; i < pi.factor1_lat->subs.size(); ++i) {
              if (run.done()) return;
              const auto& n1 = pi.factor1_lat->subs[i];
              if (n1.is_whole()) {
                run.record(false, true, nullptr);
                continue;
              }
              // N = N1 x M2 inside the product; (x, y) has index x*|M2| + y
              std::vector<int> gens;
              for (int x : n1.elements)
                for (int y = 0; y < pi.factor2_size; ++y) gens.push_back(x * pi.factor2_size + y);
              auto n = submodule_span(cm.module, gens);
              int idx = cm.lattice->index_of(n.mask);
              const bool hyp = cm.reports[idx].one_absorbing_primary;
              const bool ok = !hyp || pi.factor1_reports[i].one_absorbing_primary;
              run.record(hyp, ok, [&] {
                return Violation{cm.sub_desc(idx), "factor lost the 1-absorbing primary property"};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-S",
        "localizations of 1-absorbing primary submodules stay 1-absorbing "
        "primary when they stay proper",
        InstanceKind::construction, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& li : corpus.localizations) {
            const auto& cm = corpus.modules[li.module_index];
            for (size_t i = 0; i < cm.lattice->subs.size(); ++i) {
              if (run.done()) return;
              const auto& n = cm.lattice->subs[i];
              if (!cm.reports[i].one_absorbing_primary) {
                run.record(false, true, nullptr);
                continue;
              }
              auto sn = localize_submodule(li.loc, n);
              const bool hyp = !sn.is_whole();
              bool ok = !hyp || classify_submodule(sn, *li.loc_lat).one_absorbing_primary;
              run.record(hyp, ok, [&] {
                return Violation{li.desc, "localized submodule lost the property"};
              });
            }
          }
        }});

    laws.push_back(Law{
        "L-ID",
        "if the homogeneous ideal I(+)N of the idealization R(+)M is "
        "1-absorbing primary, then I is a 1-absorbing primary ideal of R",
        InstanceKind::construction, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& ii : corpus.idealizations) {
            if (run.done()) return;
            auto hrep = classify_ideal(ii.homogeneous);
            const bool hyp = hrep.one_absorbing_primary;
            bool ok = !hyp || classify_ideal(ii.ideal).one_absorbing_primary;
            run.record(hyp, ok, [&] {
              return Violation{ii.desc, "base ideal lost the 1-absorbing primary property"};
            });
          }
        }});

    laws.push_back(Law{
        "L-NEG",
        "fixture: 2Z and 3Z are 1-absorbing primary submodules of the integers "
        "while their intersection 6Z is not, witnessed by 2*2*3; and 12Z is "
        "2-absorbing primary but not 1-absorbing primary",
        InstanceKind::ideal, false, false,
        [](const Corpus&, LawRun& run) {
          auto two = classify_int_submodule(IntLattice::from_generators(1, {{2}}));
          auto three = classify_int_submodule(IntLattice::from_generators(1, {{3}}));
          auto six = classify_int_submodule(IntLattice::from_generators(1, {{6}}));
          auto twelve = classify_int_ideal(12);
          bool ok = two.one_absorbing_primary && three.one_absorbing_primary &&
                    !six.one_absorbing_primary && six.one_absorbing_primary_witness &&
                    six.one_absorbing_primary_witness->a == 2 &&
                    six.one_absorbing_primary_witness->b == 2 &&
                    six.one_absorbing_primary_witness->m == std::vector<i64>{3} &&
                    twelve.two_absorbing_primary && !twelve.one_absorbing_primary;
          run.record(true, ok, [&] {
            return Violation{"integer fixtures", "expected separation failed"};
          });
        }});

    laws.push_back(Law{
        "L-EF",
        "an efficient covering by more than two submodules of a finitely "
        "generated multiplication module satisfying the radical non-containment "
        "condition has no 1-absorbing primary member",
        InstanceKind::covering, true, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& ci : corpus.coverings) {
            if (run.done()) return;
            const auto& cm = corpus.modules[ci.module_index];
            Covering c = corpus.covering(ci);
            bool hyp = cm.multiplication && c.members.size() > 2 && is_efficient(c) &&
                       radical_avoidance_hypothesis(c, *cm.lattice);
            bool ok = true;
            if (hyp)
              for (int mi : ci.member_indices)
                if (cm.reports[mi].one_absorbing_primary) ok = false;
            run.record(hyp, ok, [&] {
              return Violation{"covering of " + cm.sub_desc(ci.target_index),
                               "a member is 1-absorbing primary"};
            });
          }
        }});

    laws.push_back(Law{
        "L-AV",
        "avoidance: if a covering of a finitely generated multiplication module "
        "has at most two members that are not 1-absorbing primary and satisfies "
        "the radical non-containment condition, the target lies inside one member",
        InstanceKind::covering, false, false,
        [](const Corpus& corpus, LawRun& run) {
          for (const auto& ci : corpus.coverings) {
            if (run.done()) return;
            const auto& cm = corpus.modules[ci.module_index];
            if (!cm.multiplication) {
              run.record(false, true, nullptr);
              continue;
            }
            Covering c = corpus.covering(ci);
            std::vector<bool> flags;
            for (int mi : ci.member_indices)
              flags.push_back(cm.reports[mi].one_absorbing_primary);
            auto verdict = avoidance_check(c, *cm.lattice, flags);
            const bool hyp = verdict.hypothesis_members && verdict.hypothesis_radical;
            run.record(hyp, !hyp || verdict.conclusion, [&] {
              return Violation{"covering of " + cm.sub_desc(ci.target_index),
                               "target escapes every member"};
            });
          }
        }});

    return laws;
  }();
  return catalog;
}

inline const Law* find_law(const std::string& id) {
  for (const auto& law : law_catalog())
    if (law.id == id) return &law;
  return nullptr;
}

}  // namespace modlab

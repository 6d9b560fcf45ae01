#pragma once

#include <json.hpp>

#include "modlab/intclassify.hpp"
#include "modlab/laws.hpp"
#include "modlab/module.hpp"

namespace modlab {

using json = nlohmann::ordered_json;

namespace reportdetail {

inline json ideal_json(const Ideal& ideal, const FiniteModule* mod_for_base) {
  json out;
  if (mod_for_base && mod_for_base->integer_base()) {
    // The ideal lives in Z/e; report the integer ideal dZ it lifts to.
    const int e = mod_for_base->scalar_count();
    long long d = e;
    for (int x : ideal.elements)
      if (x != 0) d = std::gcd(d, static_cast<long long>(x));
    out["ring"] = "Z";
    out["generator"] = d;
    return out;
  }
  const FiniteRing& ring = *ideal.ring;
  json gens = json::array();
  for (int g : ideal.generators) gens.push_back(ring.name(g));
  out["generators"] = std::move(gens);
  out["size"] = ideal.size();
  if (ideal.size() <= 24) {
    json elems = json::array();
    for (int x : ideal.elements) elems.push_back(ring.name(x));
    out["elements"] = std::move(elems);
  }
  return out;
}

inline json submodule_json(const Submodule& sub) {
  const FiniteModule& mod = *sub.module;
  json out;
  json gens = json::array();
  for (int g : sub.generators) gens.push_back(mod.name(g));
  out["generators"] = std::move(gens);
  out["size"] = sub.size();
  if (sub.size() <= 24) {
    json elems = json::array();
    for (int x : sub.elements) elems.push_back(mod.name(x));
    out["elements"] = std::move(elems);
  }
  return out;
}

inline json lattice_json(const IntLattice& lat) {
  json out;
  out["ambient"] = lat.ambient_rank();
  out["rank"] = lat.rank();
  json basis = json::array();
  for (const auto& c : lat.basis()) {
    json col = json::array();
    for (i64 v : c) col.push_back(v);
    basis.push_back(std::move(col));
  }
  out["basis"] = std::move(basis);
  return out;
}

inline json vec_json(const std::vector<i64>& v) {
  json out = json::array();
  for (i64 x : v) out.push_back(x);
  return out;
}

}  // namespace reportdetail

/// JSON form of a finite-module classification report; key order is fixed so
/// equal reports serialize byte-identically.
inline json to_json(const ClassificationReport& rep, const ModulePtr& mod) {
  using namespace reportdetail;
  json out;
  out["proper"] = rep.proper;
  out["prime"] = rep.prime;
  out["primary"] = rep.primary;
  out["two_absorbing"] = rep.two_absorbing;
  out["two_absorbing_primary"] = rep.two_absorbing_primary;
  out["one_absorbing_primary"] = rep.one_absorbing_primary;
  out["colon_ideal"] = ideal_json(rep.colon_ideal, mod.get());
  out["colon_radical"] = ideal_json(rep.colon_radical, mod.get());
  out["m_radical"] = submodule_json(rep.m_rad);
  if (rep.p_one_absorbing_primary_for)
    out["p_one_absorbing_primary_for"] = ideal_json(*rep.p_one_absorbing_primary_for, mod.get());
  json witnesses;
  auto pair_witness = [&](const ScalarElemWitness& w) {
    json j;
    j["a"] = mod->scalar_name(w.scalar);
    j["m"] = mod->name(w.elem);
    return j;
  };
  auto triple_witness = [&](const ScalarPairElemWitness& w) {
    json j;
    j["a"] = mod->scalar_name(w.scalar_a);
    j["b"] = mod->scalar_name(w.scalar_b);
    j["m"] = mod->name(w.elem);
    return j;
  };
  if (rep.prime_witness) witnesses["prime"] = pair_witness(*rep.prime_witness);
  if (rep.primary_witness) witnesses["primary"] = pair_witness(*rep.primary_witness);
  if (rep.two_absorbing_witness)
    witnesses["two_absorbing"] = triple_witness(*rep.two_absorbing_witness);
  if (rep.two_absorbing_primary_witness)
    witnesses["two_absorbing_primary"] = triple_witness(*rep.two_absorbing_primary_witness);
  if (rep.one_absorbing_primary_witness)
    witnesses["one_absorbing_primary"] = triple_witness(*rep.one_absorbing_primary_witness);
  if (!witnesses.is_null()) out["witnesses"] = std::move(witnesses);
  return out;
}

inline json to_json(const IntSubmoduleReport& rep) {
  using namespace reportdetail;
  json out;
  out["lattice"] = lattice_json(rep.lattice);
  out["proper"] = rep.proper;
  out["prime"] = rep.prime;
  out["primary"] = rep.primary;
  if (rep.two_absorbing_primary) out["two_absorbing_primary"] = *rep.two_absorbing_primary;
  out["one_absorbing_primary"] = rep.one_absorbing_primary;
  json colon;
  colon["ring"] = "Z";
  colon["generator"] = rep.colon;
  out["colon_ideal"] = std::move(colon);
  if (rep.ideal_report) {
    json rad;
    rad["ring"] = "Z";
    rad["generator"] = rep.ideal_report->radical;
    out["colon_radical"] = std::move(rad);
  }
  out["m_radical"] = lattice_json(rep.m_rad);
  out["saturation"] = lattice_json(rep.sat);
  out["invariant_factors"] = vec_json(rep.invariant_factor_list);
  json witnesses;
  if (rep.prime_witness) {
    json w;
    w["a"] = rep.prime_witness->a;
    w["m"] = vec_json(rep.prime_witness->m);
    witnesses["prime"] = std::move(w);
  }
  if (rep.primary_witness) {
    json w;
    w["a"] = rep.primary_witness->a;
    w["m"] = vec_json(rep.primary_witness->m);
    witnesses["primary"] = std::move(w);
  }
  if (rep.one_absorbing_primary_witness) {
    json w;
    w["a"] = rep.one_absorbing_primary_witness->a;
    w["b"] = rep.one_absorbing_primary_witness->b;
    w["m"] = vec_json(rep.one_absorbing_primary_witness->m);
    witnesses["one_absorbing_primary"] = std::move(w);
  }
  if (rep.ideal_report && rep.ideal_report->two_absorbing_primary_witness) {
    json w;
    w["a"] = (*rep.ideal_report->two_absorbing_primary_witness)[0];
    w["b"] = (*rep.ideal_report->two_absorbing_primary_witness)[1];
    w["c"] = (*rep.ideal_report->two_absorbing_primary_witness)[2];
    witnesses["two_absorbing_primary"] = std::move(w);
  }
  if (!witnesses.is_null()) out["witnesses"] = std::move(witnesses);
  return out;
}

/// JSON line for one law run.  Runtime is deliberately omitted so that
/// equal runs emit byte-identical output.
inline json to_json(const LawReport& rep, const Law& law, std::uint64_t seed) {
  json out;
  out["law"] = rep.law_id;
  out["kind"] = to_string(law.kind);
  out["statement"] = law.statement;
  out["corpus"] = rep.corpus;
  out["seed"] = seed;
  out["instances_checked"] = rep.main.instances_checked;
  out["non_vacuous_count"] = rep.main.non_vacuous;
  json viols = json::array();
  for (const auto& v : rep.main.violations) {
    json j;
    j["instance"] = v.instance;
    j["detail"] = v.detail;
    viols.push_back(std::move(j));
  }
  out["violations"] = std::move(viols);
  if (rep.faithful) {
    json f;
    f["instances_checked"] = rep.faithful->instances_checked;
    f["non_vacuous_count"] = rep.faithful->non_vacuous;
    json fv = json::array();
    for (const auto& v : rep.faithful->violations) {
      json j;
      j["instance"] = v.instance;
      j["detail"] = v.detail;
      fv.push_back(std::move(j));
    }
    f["violations"] = std::move(fv);
    out["faithful_subclass"] = std::move(f);
  }
  out["status"] = rep.status();
  return out;
}

}  // namespace modlab

#pragma once

#include <map>

#include "modlab/module.hpp"

namespace modlab {

/// A covering instance: target N with members N_1..N_n, all submodules of
/// one module.  Members are expected proper; corpus generators only build
/// coverings with n >= 2, while reductions may return fewer members.
struct Covering {
  ModulePtr module;
  Submodule target;
  std::vector<Submodule> members;
};

inline bool covers(const Covering& c) {
  for (int x : c.target.elements) {
    bool hit = false;
    for (const auto& m : c.members)
      if (m.contains(x)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

namespace detail {

inline bool covers_without(const Covering& c, size_t skip) {
  for (int x : c.target.elements) {
    bool hit = false;
    for (size_t i = 0; i < c.members.size(); ++i) {
      if (i == skip) continue;
      if (c.members[i].contains(x)) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

}  // namespace detail

/// True when no single member can be removed without losing coverage.
/// Demands a covering to begin with.
inline bool is_efficient(const Covering& c) {
  if (!covers(c)) throw std::invalid_argument("members do not cover the target");
  for (size_t i = 0; i < c.members.size(); ++i)
    if (detail::covers_without(c, i)) return false;
  return true;
}

/// Greedy reduction: repeatedly drop the lowest-index member whose removal
/// keeps the target covered.  Runs whether or not the input covers (a
/// non-covering input comes back unchanged in coverage status).
inline Covering reduce_to_efficient(Covering c) {
  bool removed = true;
  while (removed && c.members.size() > 1) {
    removed = false;
    for (size_t i = 0; i < c.members.size(); ++i) {
      if (detail::covers_without(c, i)) {
        c.members.erase(c.members.begin() + static_cast<std::ptrdiff_t>(i));
        removed = true;
        break;
      }
    }
  }
  return c;
}

/// The avoidance hypothesis: for every i != j and every m outside
/// M-rad(N_j), rad(N_i : M) is not contained in rad(N_j : m).
inline bool radical_avoidance_hypothesis(const Covering& c, const SubmoduleLattice& lat) {
  const int n = static_cast<int>(c.members.size());
  std::vector<Ideal> member_radicals;
  member_radicals.reserve(n);
  for (const auto& m : c.members) member_radicals.push_back(radical(colon_module(m)));
  for (int j = 0; j < n; ++j) {
    Submodule mrad_j = m_radical(c.members[j], lat);
    std::map<std::vector<std::uint8_t>, Ideal> radical_memo;
    for (int x = 0; x < c.module->size(); ++x) {
      if (mrad_j.contains(x)) continue;
      Ideal colon = colon_element(c.members[j], x);
      auto it = radical_memo.find(colon.mask);
      if (it == radical_memo.end())
        it = radical_memo.emplace(colon.mask, radical(colon)).first;
      const Ideal& rad_jm = it->second;
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        if (ideal_subset(member_radicals[i], rad_jm)) return false;
      }
    }
  }
  return true;
}

struct AvoidanceVerdict {
  bool hypothesis_radical = false;  // the radical non-containment condition
  bool hypothesis_members = false;  // at most two members not 1-absorbing primary
  bool conclusion = false;          // the target lies inside one member
  int containing_member = -1;
};

/// Avoidance verdict for a covering of a finitely generated multiplication
/// module; the caller supplies per-member 1-absorbing-primary flags.
inline AvoidanceVerdict avoidance_check(const Covering& c, const SubmoduleLattice& lat,
                                        const std::vector<bool>& member_is_one_absorbing) {
  if (!is_multiplication(lat))
    throw std::invalid_argument("avoidance applies to multiplication modules");
  if (!covers(c)) throw std::invalid_argument("members do not cover the target");
  if (member_is_one_absorbing.size() != c.members.size())
    throw std::invalid_argument("flag count does not match the member count");
  AvoidanceVerdict v;
  int not_one_absorbing = 0;
  for (bool f : member_is_one_absorbing)
    if (!f) ++not_one_absorbing;
  v.hypothesis_members = not_one_absorbing <= 2;
  v.hypothesis_radical = radical_avoidance_hypothesis(c, lat);
  for (size_t k = 0; k < c.members.size(); ++k)
    if (submodule_subset(c.target, c.members[k])) {
      v.conclusion = true;
      v.containing_member = static_cast<int>(k);
      break;
    }
  return v;
}

}  // namespace modlab

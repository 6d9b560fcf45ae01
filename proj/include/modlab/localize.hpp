#pragma once

#include <map>

#include "modlab/module.hpp"

namespace modlab {

/// Localization of a (ring-base) module at a multiplicatively closed set S:
/// fraction rings/modules with the saturation equivalence
///   r/s ~ r'/s'  iff  t(rs' - r's) = 0 for some t in S.
///
/// Internally both carriers are first divided by the S-torsion kernel
/// { x : tx = 0 for some t in S }; on those quotients the images of S act
/// injectively and the equivalence collapses to exact cross multiplication.
struct Localization {
  RingPtr ring;              // S^{-1}R
  ModulePtr module;          // S^{-1}M over S^{-1}R
  std::vector<int> ring_map;    // r -> class of r/1
  std::vector<int> module_map;  // m -> class of m/1
};

inline Localization localize(const ModulePtr& mod, const std::vector<int>& s_elements,
                             int carrier_cap = FiniteRing::kDefaultCarrierCap) {
  if (mod->integer_base())
    throw std::invalid_argument("localization requires a finite base ring");
  const RingPtr& ring = mod->scalar_ring();
  const int n = ring->size();

  std::vector<std::uint8_t> s_mask(n, 0);
  for (int s : s_elements) {
    if (s < 0 || s >= n) throw std::invalid_argument("S contains a foreign element");
    s_mask[s] = 1;
  }
  if (!s_mask[ring->one()]) throw std::invalid_argument("S must contain 1");
  if (s_mask[ring->zero()])
    throw std::invalid_argument("S contains 0; the localization would collapse");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (s_mask[a] && s_mask[b] && !s_mask[ring->mul(a, b)])
        throw std::invalid_argument("S is not multiplicatively closed");

  std::vector<int> s_list = detail::mask_elements(s_mask);

  // S-torsion kernel of the ring and of the module.
  std::vector<std::uint8_t> ker_ring(n, 0);
  for (int x = 0; x < n; ++x)
    for (int t : s_list)
      if (ring->mul(t, x) == ring->zero()) {
        ker_ring[x] = 1;
        break;
      }
  Ideal ker_ideal = make_ideal_from_mask(ring, std::move(ker_ring));

  std::vector<std::uint8_t> ker_mod(mod->size(), 0);
  for (int x = 0; x < mod->size(); ++x)
    for (int t : s_list)
      if (mod->act(t, x) == mod->zero()) {
        ker_mod[x] = 1;
        break;
      }
  Submodule ker_sub = submodule_from_mask(mod, std::move(ker_mod));

  RingPtr rbar = FiniteRing::quotient(ring, ker_ideal, carrier_cap);
  ModulePtr mbar_raw = FiniteModule::quotient(mod, ker_sub, carrier_cap);

  // Element maps onto the two quotients (coset indices by discovery order).
  std::vector<int> ring_q = additive_coset_map(
      n, [&](int a, int b) { return ring->add(a, b); }, ker_ideal.elements);
  std::vector<int> mod_q = additive_coset_map(
      mod->size(), [&](int a, int b) { return mod->add(a, b); }, ker_sub.elements);

  // The module quotient keeps the original scalar ring (the integer case is
  // excluded above), so mbar is a module over `ring`, while rbar cosets act
  // on it through representatives.
  const FiniteModule& mbar = *mbar_raw;
  const FiniteRing& rb = *rbar;

  std::vector<int> rep_r(rb.size(), -1), rep_m(mbar.size(), -1);
  for (int x = 0; x < n; ++x)
    if (rep_r[ring_q[x]] < 0) rep_r[ring_q[x]] = x;
  for (int x = 0; x < mod->size(); ++x)
    if (rep_m[mod_q[x]] < 0) rep_m[mod_q[x]] = x;

  // Action of an rbar class on an mbar class; well defined because the
  // S-torsion kernel ideal maps M into the S-torsion kernel submodule.
  auto act_bar = [&](int rbar_class, int mbar_idx) {
    return mod_q[mod->act(rep_r[rbar_class], rep_m[mbar_idx])];
  };

  std::vector<int> sbar;  // distinct denominators in rbar
  {
    std::vector<std::uint8_t> seen(rb.size(), 0);
    for (int s : s_list)
      if (!seen[ring_q[s]]) {
        seen[ring_q[s]] = 1;
        sbar.push_back(ring_q[s]);
      }
    std::sort(sbar.begin(), sbar.end());
  }

  // Fraction classes over pairs (x, s): x/s ~ y/u iff xu = ys (in rbar, resp.
  // scaled action in mbar).  Classes are canonicalized to the first pair in
  // (denominator, numerator) scan order.
  struct Fractions {
    std::vector<int> clazz;        // pair index -> class id
    std::vector<std::pair<int, int>> rep;  // class id -> (x, s)
  };
  auto make_fractions = [&](int carrier, auto eq) {
    Fractions f;
    const int pairs = carrier * static_cast<int>(sbar.size());
    f.clazz.assign(pairs, -1);
    for (int si = 0; si < static_cast<int>(sbar.size()); ++si)
      for (int x = 0; x < carrier; ++x) {
        const int p = x * sbar.size() + si;
        if (f.clazz[p] >= 0) continue;
        const int id = static_cast<int>(f.rep.size());
        for (int sj = 0; sj < static_cast<int>(sbar.size()); ++sj)
          for (int y = 0; y < carrier; ++y) {
            const int q = y * sbar.size() + sj;
            if (f.clazz[q] >= 0) continue;
            if (eq(x, sbar[si], y, sbar[sj])) f.clazz[q] = id;
          }
        f.rep.emplace_back(x, sbar[si]);
      }
    return f;
  };

  Fractions fr = make_fractions(rb.size(), [&](int x, int s, int y, int u) {
    return rb.mul(x, u) == rb.mul(y, s);
  });
  Fractions fm = make_fractions(mbar.size(), [&](int x, int s, int y, int u) {
    return act_bar(u, x) == act_bar(s, y);
  });

  auto rfrac = [&](int x, int s) {
    auto it = std::lower_bound(sbar.begin(), sbar.end(), s);
    const int si = static_cast<int>(it - sbar.begin());
    return fr.clazz[x * sbar.size() + si];
  };
  auto mfrac = [&](int x, int s) {
    auto it = std::lower_bound(sbar.begin(), sbar.end(), s);
    const int si = static_cast<int>(it - sbar.begin());
    return fm.clazz[x * sbar.size() + si];
  };

  const int rn = static_cast<int>(fr.rep.size());
  std::vector<std::uint16_t> radd(rn * rn), rmul(rn * rn);
  for (int i = 0; i < rn; ++i)
    for (int j = 0; j < rn; ++j) {
      auto [x, s] = fr.rep[i];
      auto [y, u] = fr.rep[j];
      radd[i * rn + j] = static_cast<std::uint16_t>(
          rfrac(rb.add(rb.mul(x, u), rb.mul(y, s)), rb.mul(s, u)));
      rmul[i * rn + j] = static_cast<std::uint16_t>(rfrac(rb.mul(x, y), rb.mul(s, u)));
    }
  std::vector<std::string> rnames(rn);
  for (int i = 0; i < rn; ++i)
    rnames[i] = rb.name(fr.rep[i].first) + "/" + rb.name(fr.rep[i].second);
  RingPtr sring = FiniteRing::from_tables(rn, std::move(radd), std::move(rmul),
                                          std::move(rnames),
                                          "localization (" + ring->descriptor() + ")",
                                          carrier_cap);

  const int mn = static_cast<int>(fm.rep.size());
  std::vector<std::uint16_t> madd(mn * mn), mact(rn * mn);
  for (int i = 0; i < mn; ++i) {
    auto [x, s] = fm.rep[i];
    for (int j = 0; j < mn; ++j) {
      auto [y, u] = fm.rep[j];
      madd[i * mn + j] = static_cast<std::uint16_t>(
          mfrac(mbar.add(act_bar(u, x), act_bar(s, y)), rb.mul(s, u)));
    }
    for (int r = 0; r < rn; ++r) {
      auto [a, t] = fr.rep[r];
      mact[r * mn + i] = static_cast<std::uint16_t>(mfrac(act_bar(a, x), rb.mul(t, s)));
    }
  }
  std::vector<std::string> mnames(mn);
  for (int i = 0; i < mn; ++i)
    mnames[i] = mbar.name(fm.rep[i].first) + "/" + rb.name(fm.rep[i].second);
  std::vector<int> mgens;
  for (int g : mod->generators()) {
    int c = mfrac(mod_q[g], rb.one());
    if (std::find(mgens.begin(), mgens.end(), c) == mgens.end()) mgens.push_back(c);
  }
  ModulePtr smod = FiniteModule::from_tables(
      sring, false, mn, std::move(madd), std::move(mact), std::move(mnames), std::move(mgens),
      "localization (" + mod->descriptor() + ")", carrier_cap);

  Localization out;
  out.ring = std::move(sring);
  out.module = std::move(smod);
  out.ring_map.resize(n);
  for (int r = 0; r < n; ++r) out.ring_map[r] = rfrac(ring_q[r], rb.one());
  out.module_map.resize(mod->size());
  for (int m = 0; m < mod->size(); ++m) out.module_map[m] = mfrac(mod_q[m], rb.one());
  return out;
}

/// S^{-1}N: the submodule of S^{-1}M generated by the image of N.
inline Submodule localize_submodule(const Localization& loc, const Submodule& n) {
  std::vector<int> gens;
  for (int x : n.elements) gens.push_back(loc.module_map[x]);
  return submodule_span(loc.module, gens);
}

}  // namespace modlab

#pragma once

#include "modlab/module.hpp"

namespace modlab {

/// The idealization ring R(+)M: carrier R x M with componentwise addition
/// and (a, m)(b, n) = (ab, an + bm).  Pair (r, m) has index r*|M| + m.
struct Idealization {
  RingPtr ring;  // R(+)M
  RingPtr base_ring;
  ModulePtr base_module;

  int index(int r, int m) const { return r * base_module->size() + m; }
  std::pair<int, int> parts(int idx) const {
    return {idx / base_module->size(), idx % base_module->size()};
  }
};

inline Idealization idealize(const RingPtr& ring, const ModulePtr& mod,
                             int carrier_cap = FiniteRing::kDefaultCarrierCap) {
  if (mod->integer_base() || mod->scalar_ring() != ring)
    throw std::invalid_argument("idealization requires a module over the given ring");
  const int nr = ring->size(), nm = mod->size();
  const long long sz = static_cast<long long>(nr) * nm;
  if (sz > carrier_cap)
    throw CapError("idealization carrier size " + std::to_string(sz) + " exceeds cap " +
                   std::to_string(carrier_cap));
  const int q = static_cast<int>(sz);
  auto idx = [nm](int r, int m) { return r * nm + m; };
  std::vector<std::uint16_t> add(q * q), mul(q * q);
  for (int a = 0; a < nr; ++a)
    for (int x = 0; x < nm; ++x) {
      const int p = idx(a, x);
      for (int b = 0; b < nr; ++b)
        for (int y = 0; y < nm; ++y) {
          const int t = idx(b, y);
          add[p * q + t] = static_cast<std::uint16_t>(idx(ring->add(a, b), mod->add(x, y)));
          mul[p * q + t] = static_cast<std::uint16_t>(
              idx(ring->mul(a, b), mod->add(mod->act(a, y), mod->act(b, x))));
        }
    }
  std::vector<std::string> names(q);
  for (int a = 0; a < nr; ++a)
    for (int x = 0; x < nm; ++x) names[idx(a, x)] = "(" + ring->name(a) + "," + mod->name(x) + ")";
  Idealization out;
  out.ring = FiniteRing::from_tables(
      q, std::move(add), std::move(mul), std::move(names),
      "idealize (" + ring->descriptor() + ") (" + mod->descriptor() + ")", carrier_cap);
  out.base_ring = ring;
  out.base_module = mod;
  return out;
}

/// The homogeneous ideal I(+)N of R(+)M; requires IM to lie inside N.
inline Ideal homogeneous_ideal(const Idealization& idz, const Ideal& ideal, const Submodule& n) {
  if (ideal.ring != idz.base_ring || n.module != idz.base_module)
    throw std::invalid_argument("homogeneous ideal parts belong to different structures");
  for (int i : ideal.elements)
    for (int m = 0; m < idz.base_module->size(); ++m)
      if (!n.contains(idz.base_module->act(i, m)))
        throw std::invalid_argument("IM is not contained in N");
  std::vector<std::uint8_t> mask(idz.ring->size(), 0);
  std::vector<int> members;
  for (int i : ideal.elements)
    for (int m : n.elements) {
      mask[idz.index(i, m)] = 1;
      members.push_back(idz.index(i, m));
    }
  // I(+)N is an ideal exactly when IM lies in N; its span must reproduce
  // the carrier.
  Ideal out = ideal_span(idz.ring, members);
  if (out.mask != mask) throw std::logic_error("homogeneous carrier failed to close");
  out.generators = detail::reduce_ideal_generators(*idz.ring, out.mask);
  return out;
}

}  // namespace modlab

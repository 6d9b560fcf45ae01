#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "modlab/ring.hpp"
#include "modlab/util.hpp"

namespace modlab {

class FiniteModule;
using ModulePtr = std::shared_ptr<const FiniteModule>;

struct Submodule;

/// A finite module, either over a concrete finite ring or over the integers.
///
/// In the integer case scalars are represented by residues modulo the group
/// exponent e (stored as the residue ring Z/e): the action of any integer
/// factors through Z/e, and for e >= 2 every residue class modulo e contains
/// a non-unit integer, so quantifying "non-unit scalars" over all residues is
/// exact.
class FiniteModule {
 public:
  static constexpr int kDefaultCarrierCap = 256;

  int size() const { return size_; }
  int add(int x, int y) const { return add_[x * size_ + y]; }
  int act(int r, int m) const { return act_[r * size_ + m]; }
  int neg(int m) const { return neg_[m]; }
  int sub(int x, int y) const { return add(x, neg(y)); }
  int zero() const { return zero_; }
  bool integer_base() const { return integer_base_; }
  const RingPtr& scalar_ring() const { return scalars_; }
  int scalar_count() const { return scalars_->size(); }
  /// Scalars quantified by the "non-unit" conditions: ring non-units for a
  /// ring base, every residue for the integer base.
  const std::vector<int>& absorbing_scalars() const { return absorbing_; }
  const std::string& name(int m) const { return names_[m]; }
  const std::string& descriptor() const { return descriptor_; }
  const std::vector<int>& generators() const { return generators_; }

  std::string scalar_name(int r) const {
    return integer_base_ ? std::to_string(r) : scalars_->name(r);
  }

  static ModulePtr regular(const RingPtr& ring, int carrier_cap = kDefaultCarrierCap);

  /// Direct sum of cyclic groups Z/orders[i] as a module over Z/modulus;
  /// every order must divide the modulus.
  static ModulePtr cyclic_over_ring(const RingPtr& residue_ring, const std::vector<int>& orders,
                                    int carrier_cap = kDefaultCarrierCap);

  /// Direct sum of cyclic groups as a module over the integers (scalars are
  /// residues modulo the exponent).
  static ModulePtr cyclic_over_integers(const std::vector<int>& orders,
                                        int carrier_cap = kDefaultCarrierCap);

  /// M1 x M2 over the product of the base rings; element (x, y) has index
  /// x*|M2| + y, matching the product-ring element indexing.
  static ModulePtr product(const ModulePtr& m1, const ModulePtr& m2,
                           int carrier_cap = kDefaultCarrierCap);

  static ModulePtr quotient(const ModulePtr& m, const Submodule& n,
                            int carrier_cap = kDefaultCarrierCap);

  /// Build from explicit tables; verifies the abelian-group axioms and all
  /// module action laws, including that the identity scalar acts as the
  /// identity.
  static ModulePtr from_tables(RingPtr scalars, bool integer_base, int size,
                               std::vector<std::uint16_t> add_table,
                               std::vector<std::uint16_t> action_table,
                               std::vector<std::string> names, std::vector<int> generators,
                               std::string descriptor, int carrier_cap = kDefaultCarrierCap);

 private:
  FiniteModule() = default;
  void finish();

  RingPtr scalars_;
  bool integer_base_ = false;
  int size_ = 0;
  int zero_ = -1;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> act_;
  std::vector<int> neg_;
  std::vector<int> absorbing_;
  std::vector<std::string> names_;
  std::vector<int> generators_;
  std::string descriptor_;
};

struct Submodule {
  ModulePtr module;
  std::vector<std::uint8_t> mask;
  std::vector<int> elements;
  std::vector<int> generators;

  bool contains(int m) const { return mask[m] != 0; }
  int size() const { return static_cast<int>(elements.size()); }
  bool is_whole() const { return size() == module->size(); }
  bool is_zero() const { return size() == 1; }

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.module == b.module && a.mask == b.mask;
  }
};

namespace detail {

inline std::vector<std::uint8_t> submodule_closure(const FiniteModule& mod,
                                                   const std::vector<int>& seed) {
  std::vector<std::uint8_t> mask(mod.size(), 0);
  std::vector<int> work;
  std::vector<int> members;
  auto push = [&](int x) {
    if (!mask[x]) {
      mask[x] = 1;
      work.push_back(x);
    }
  };
  push(mod.zero());
  for (int g : seed) push(g);
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int r = 0; r < mod.scalar_count(); ++r) push(mod.act(r, x));
    for (int y : members) push(mod.add(x, y));
    push(mod.add(x, x));
    members.push_back(x);
  }
  return mask;
}

inline std::vector<int> reduce_submodule_generators(const FiniteModule& mod,
                                                    const std::vector<std::uint8_t>& mask) {
  std::vector<int> gens;
  std::vector<std::uint8_t> span = submodule_closure(mod, {});
  for (int x = 0; x < mod.size(); ++x) {
    if (!mask[x] || span[x]) continue;
    gens.push_back(x);
    span = submodule_closure(mod, gens);
    if (span == mask) break;
  }
  return gens;
}

}  // namespace detail

inline Submodule submodule_from_mask(const ModulePtr& mod, std::vector<std::uint8_t> mask) {
  Submodule s;
  s.module = mod;
  s.elements = detail::mask_elements(mask);
  s.generators = detail::reduce_submodule_generators(*mod, mask);
  s.mask = std::move(mask);
  return s;
}

inline Submodule submodule_span(const ModulePtr& mod, const std::vector<int>& generators) {
  for (int g : generators)
    if (g < 0 || g >= mod->size())
      throw std::invalid_argument("generator outside the module carrier");
  Submodule s;
  s.module = mod;
  s.mask = detail::submodule_closure(*mod, generators);
  s.elements = detail::mask_elements(s.mask);
  s.generators = generators;
  return s;
}

inline Submodule zero_submodule(const ModulePtr& mod) { return submodule_span(mod, {}); }
inline Submodule whole_submodule(const ModulePtr& mod) {
  std::vector<int> all(mod->size());
  std::iota(all.begin(), all.end(), 0);
  return submodule_span(mod, all);
}

inline bool submodule_subset(const Submodule& a, const Submodule& b) {
  if (a.module != b.module) throw std::invalid_argument("submodules of different modules");
  for (int x : a.elements)
    if (!b.contains(x)) return false;
  return true;
}

inline Submodule submodule_sum(const Submodule& a, const Submodule& b) {
  if (a.module != b.module) throw std::invalid_argument("submodules of different modules");
  std::vector<std::uint8_t> mask(a.module->size(), 0);
  for (int x : a.elements)
    for (int y : b.elements) mask[a.module->add(x, y)] = 1;
  Submodule s;
  s.module = a.module;
  s.elements = detail::mask_elements(mask);
  s.generators = a.generators;
  s.generators.insert(s.generators.end(), b.generators.begin(), b.generators.end());
  s.mask = std::move(mask);
  return s;
}

inline Submodule submodule_intersection(const Submodule& a, const Submodule& b) {
  if (a.module != b.module) throw std::invalid_argument("submodules of different modules");
  std::vector<std::uint8_t> mask(a.module->size(), 0);
  for (int i = 0; i < a.module->size(); ++i) mask[i] = a.mask[i] && b.mask[i];
  return submodule_from_mask(a.module, std::move(mask));
}

// ---------------------------------------------------------------------------
// Colon constructions
// ---------------------------------------------------------------------------

/// (N : M) = { r : rM lies in N }, an ideal of the scalar ring.
inline Ideal colon_module(const Submodule& n) {
  const FiniteModule& mod = *n.module;
  std::vector<std::uint8_t> mask(mod.scalar_count(), 0);
  for (int r = 0; r < mod.scalar_count(); ++r) {
    bool ok = true;
    for (int m = 0; m < mod.size(); ++m)
      if (!n.contains(mod.act(r, m))) {
        ok = false;
        break;
      }
    mask[r] = ok;
  }
  return make_ideal_from_mask(mod.scalar_ring(), std::move(mask));
}

/// (N : K) = { r : rK lies in N }.
inline Ideal colon_submodule(const Submodule& n, const Submodule& k) {
  if (n.module != k.module) throw std::invalid_argument("submodules of different modules");
  const FiniteModule& mod = *n.module;
  std::vector<std::uint8_t> mask(mod.scalar_count(), 0);
  for (int r = 0; r < mod.scalar_count(); ++r) {
    bool ok = true;
    for (int m : k.elements)
      if (!n.contains(mod.act(r, m))) {
        ok = false;
        break;
      }
    mask[r] = ok;
  }
  return make_ideal_from_mask(mod.scalar_ring(), std::move(mask));
}

/// (N : m) = { r : rm lies in N } for a single element m.
inline Ideal colon_element(const Submodule& n, int m) {
  const FiniteModule& mod = *n.module;
  if (m < 0 || m >= mod.size()) throw std::invalid_argument("element outside the module carrier");
  std::vector<std::uint8_t> mask(mod.scalar_count(), 0);
  for (int r = 0; r < mod.scalar_count(); ++r) mask[r] = n.contains(mod.act(r, m));
  return make_ideal_from_mask(mod.scalar_ring(), std::move(mask));
}

/// Annihilator of the module, (0 : M).
inline Ideal annihilator(const ModulePtr& mod) { return colon_module(zero_submodule(mod)); }

/// (N :_M d) = { m : dm lies in N }, a submodule.
inline Submodule colon_in_module(const Submodule& n, int d) {
  const FiniteModule& mod = *n.module;
  if (d < 0 || d >= mod.scalar_count()) throw std::invalid_argument("scalar out of range");
  std::vector<std::uint8_t> mask(mod.size(), 0);
  for (int m = 0; m < mod.size(); ++m) mask[m] = n.contains(mod.act(d, m));
  return submodule_from_mask(n.module, std::move(mask));
}

// ---------------------------------------------------------------------------
// Submodule lattice
// ---------------------------------------------------------------------------

struct SubmoduleLattice {
  ModulePtr module;
  std::vector<Submodule> subs;  // sorted by (size, mask) ascending
  std::vector<char> is_prime;   // prime-submodule flag per entry
  int zero_index = -1;
  int whole_index = -1;

  /// Index of a submodule by carrier; the lattice is complete, so a miss is
  /// a programming error.
  int index_of(const std::vector<std::uint8_t>& mask) const {
    for (size_t i = 0; i < subs.size(); ++i)
      if (subs[i].mask == mask) return static_cast<int>(i);
    throw std::logic_error("submodule not found in the lattice");
  }
};

/// Prime submodule test: proper N such that am in N forces m in N or
/// r in (N : M); scalars range over the whole scalar carrier.
inline bool is_prime_submodule(const Submodule& n,
                               std::optional<std::array<int, 2>>* witness = nullptr) {
  const FiniteModule& mod = *n.module;
  if (n.is_whole()) return false;
  const Ideal colon = colon_module(n);
  for (int a = 0; a < mod.scalar_count(); ++a) {
    if (colon.contains(a)) continue;
    for (int m = 0; m < mod.size(); ++m) {
      if (n.contains(m)) continue;
      if (n.contains(mod.act(a, m))) {
        if (witness) *witness = {{a, m}};
        return false;
      }
    }
  }
  return true;
}

/// Complete, duplicate-free submodule lattice, computed by closing joins of
/// cyclic submodules.  Throws CapError past lattice_cap entries.
inline SubmoduleLattice enumerate_submodules(const ModulePtr& mod, int lattice_cap = 4096) {
  const FiniteModule& m = *mod;
  std::vector<Submodule> cyclics;
  {
    std::map<std::vector<std::uint8_t>, int> seen;
    for (int x = 0; x < m.size(); ++x) {
      auto mask = detail::submodule_closure(m, {x});
      if (seen.emplace(mask, 0).second) {
        Submodule s;
        s.module = mod;
        s.elements = detail::mask_elements(mask);
        s.generators = (x == m.zero()) ? std::vector<int>{} : std::vector<int>{x};
        s.mask = std::move(mask);
        cyclics.push_back(std::move(s));
      }
    }
  }

  std::map<std::vector<std::uint8_t>, int> index;
  std::vector<Submodule> subs;
  auto add_sub = [&](Submodule s) -> bool {
    auto [it, fresh] = index.emplace(s.mask, static_cast<int>(subs.size()));
    if (fresh) {
      if (static_cast<int>(subs.size()) >= lattice_cap)
        throw CapError("submodule lattice exceeds cap " + std::to_string(lattice_cap));
      subs.push_back(std::move(s));
    }
    return fresh;
  };

  add_sub(zero_submodule(mod));
  for (size_t i = 0; i < subs.size(); ++i) {
    for (const auto& c : cyclics) {
      Submodule joined = submodule_sum(subs[i], c);
      add_sub(std::move(joined));
    }
  }

  std::sort(subs.begin(), subs.end(), [](const Submodule& a, const Submodule& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.mask < b.mask;
  });
  // Re-derive small generator lists for the sorted entries.
  for (auto& s : subs) s.generators = detail::reduce_submodule_generators(m, s.mask);

  SubmoduleLattice lat;
  lat.module = mod;
  lat.subs = std::move(subs);
  lat.is_prime.resize(lat.subs.size());
  for (size_t i = 0; i < lat.subs.size(); ++i) {
    lat.is_prime[i] = is_prime_submodule(lat.subs[i]);
    if (lat.subs[i].size() == 1) lat.zero_index = static_cast<int>(i);
    if (lat.subs[i].is_whole()) lat.whole_index = static_cast<int>(i);
  }
  return lat;
}

/// Intersection of all prime submodules containing N; M itself when no prime
/// submodule contains N.
inline Submodule m_radical(const Submodule& n, const SubmoduleLattice& lat) {
  if (lat.module != n.module) throw std::invalid_argument("lattice belongs to another module");
  std::vector<std::uint8_t> mask(n.module->size(), 1);
  bool any = false;
  for (size_t i = 0; i < lat.subs.size(); ++i) {
    if (!lat.is_prime[i]) continue;
    if (!submodule_subset(n, lat.subs[i])) continue;
    any = true;
    for (int x = 0; x < n.module->size(); ++x) mask[x] = mask[x] && lat.subs[i].mask[x];
  }
  if (!any) return whole_submodule(n.module);
  return submodule_from_mask(n.module, std::move(mask));
}

// ---------------------------------------------------------------------------
// Multiplication modules
// ---------------------------------------------------------------------------

/// Submodule generated by I*M for an ideal I of the scalar ring.
inline Submodule ideal_times_module(const Ideal& ideal, const ModulePtr& mod) {
  if (ideal.ring != mod->scalar_ring())
    throw std::invalid_argument("ideal over a different scalar ring");
  std::vector<int> gens;
  for (int i : ideal.generators)
    for (int g : mod->generators()) gens.push_back(mod->act(i, g));
  return submodule_span(mod, gens);
}

/// Every submodule N equals (N : M)M.
inline bool is_multiplication(const SubmoduleLattice& lat) {
  for (const auto& n : lat.subs) {
    Ideal colon = colon_module(n);
    if (!(ideal_times_module(colon, lat.module) == n)) return false;
  }
  return true;
}

/// Product of submodules of a multiplication module: (N:M)(K:M)M.
inline Submodule submodule_product(const Submodule& n, const Submodule& k,
                                   const SubmoduleLattice& lat) {
  if (n.module != k.module) throw std::invalid_argument("submodules of different modules");
  if (!is_multiplication(lat))
    throw std::invalid_argument("submodule product requires a multiplication module");
  Ideal prod = ideal_combine(colon_module(n), colon_module(k), IdealOp::product);
  return ideal_times_module(prod, n.module);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct ScalarElemWitness {
  int scalar;
  int elem;
};

struct ScalarPairElemWitness {
  int scalar_a;
  int scalar_b;
  int elem;
};

/// Per-submodule record of predicate verdicts, witnesses for every false
/// flag, and the computed companions (N:M), rad(N:M), M-rad(N).
struct ClassificationReport {
  bool proper = false;
  bool prime = false;
  bool primary = false;
  bool two_absorbing = false;
  bool two_absorbing_primary = false;
  bool one_absorbing_primary = false;

  Ideal colon_ideal;
  Ideal colon_radical;
  Submodule m_rad;
  std::optional<Ideal> p_one_absorbing_primary_for;

  std::optional<ScalarElemWitness> prime_witness;
  std::optional<ScalarElemWitness> primary_witness;
  std::optional<ScalarPairElemWitness> two_absorbing_witness;
  std::optional<ScalarPairElemWitness> two_absorbing_primary_witness;
  std::optional<ScalarPairElemWitness> one_absorbing_primary_witness;
};

inline bool ideal_is_prime(const Ideal& ideal) {
  const FiniteRing& ring = *ideal.ring;
  if (ideal.is_whole()) return false;
  for (int a = 0; a < ring.size(); ++a) {
    if (ideal.contains(a)) continue;
    for (int b = a; b < ring.size(); ++b) {
      if (ideal.contains(b)) continue;
      if (ideal.contains(ring.mul(a, b))) return false;
    }
  }
  return true;
}

inline ClassificationReport classify_submodule(const Submodule& n, const SubmoduleLattice& lat) {
  if (lat.module != n.module) throw std::invalid_argument("lattice belongs to another module");
  const FiniteModule& mod = *n.module;
  ClassificationReport rep;
  rep.colon_ideal = colon_module(n);
  rep.colon_radical = radical(rep.colon_ideal);
  rep.m_rad = m_radical(n, lat);
  rep.proper = !n.is_whole();
  if (!rep.proper) return rep;

  const int ns = mod.scalar_count();
  const int q = mod.size();
  const Ideal& colon = rep.colon_ideal;
  const Ideal& crad = rep.colon_radical;
  const Submodule& mrad = rep.m_rad;

  // prime / primary: a ranges over every scalar.
  rep.prime = true;
  for (int a = 0; a < ns && rep.prime; ++a) {
    if (colon.contains(a)) continue;
    for (int m = 0; m < q; ++m) {
      if (n.contains(m)) continue;
      if (n.contains(mod.act(a, m))) {
        rep.prime = false;
        rep.prime_witness = ScalarElemWitness{a, m};
        break;
      }
    }
  }
  rep.primary = true;
  for (int a = 0; a < ns && rep.primary; ++a) {
    if (crad.contains(a)) continue;
    for (int m = 0; m < q; ++m) {
      if (n.contains(m)) continue;
      if (n.contains(mod.act(a, m))) {
        rep.primary = false;
        rep.primary_witness = ScalarElemWitness{a, m};
        break;
      }
    }
  }

  // 2-absorbing: abm in N forces ab in (N:M) or am in N or bm in N; the
  // condition is symmetric in (a, b).
  rep.two_absorbing = true;
  for (int a = 0; a < ns && rep.two_absorbing; ++a) {
    for (int b = a; b < ns && rep.two_absorbing; ++b) {
      const int ab = mod.scalar_ring()->mul(a, b);
      if (colon.contains(ab)) continue;
      for (int m = 0; m < q; ++m) {
        if (!n.contains(mod.act(ab, m))) continue;
        if (n.contains(mod.act(a, m))) continue;
        if (n.contains(mod.act(b, m))) continue;
        rep.two_absorbing = false;
        rep.two_absorbing_witness = ScalarPairElemWitness{a, b, m};
        break;
      }
    }
  }

  // 2-absorbing primary: abm in N forces ab in (N:M) or am in M-rad(N) or
  // bm in M-rad(N).
  rep.two_absorbing_primary = true;
  for (int a = 0; a < ns && rep.two_absorbing_primary; ++a) {
    for (int b = a; b < ns && rep.two_absorbing_primary; ++b) {
      const int ab = mod.scalar_ring()->mul(a, b);
      if (colon.contains(ab)) continue;
      for (int m = 0; m < q; ++m) {
        if (!n.contains(mod.act(ab, m))) continue;
        if (mrad.contains(mod.act(a, m))) continue;
        if (mrad.contains(mod.act(b, m))) continue;
        rep.two_absorbing_primary = false;
        rep.two_absorbing_primary_witness = ScalarPairElemWitness{a, b, m};
        break;
      }
    }
  }

  // 1-absorbing primary: for non-unit scalars a, b (every residue class in
  // the integer case), abm in N forces ab in (N:M) or m in M-rad(N).
  rep.one_absorbing_primary = true;
  const std::vector<int>& nu = mod.absorbing_scalars();
  for (size_t i = 0; i < nu.size() && rep.one_absorbing_primary; ++i) {
    for (size_t j = i; j < nu.size() && rep.one_absorbing_primary; ++j) {
      const int a = nu[i], b = nu[j];
      const int ab = mod.scalar_ring()->mul(a, b);
      if (colon.contains(ab)) continue;
      for (int m = 0; m < q; ++m) {
        if (mrad.contains(m)) continue;
        if (!n.contains(mod.act(ab, m))) continue;
        rep.one_absorbing_primary = false;
        rep.one_absorbing_primary_witness = ScalarPairElemWitness{a, b, m};
        break;
      }
    }
  }

  if (rep.one_absorbing_primary && ideal_is_prime(rep.colon_radical))
    rep.p_one_absorbing_primary_for = rep.colon_radical;

  return rep;
}

/// Zero annihilator.  No finite group is faithful over the integers (the
/// exponent annihilates it), so integer-base modules report false.
inline bool is_faithful(const ModulePtr& mod) {
  if (mod->integer_base()) return false;
  return annihilator(mod).is_zero();
}

// ---------------------------------------------------------------------------
// FiniteModule construction
// ---------------------------------------------------------------------------

inline void FiniteModule::finish() {
  const int q = size_;
  const int ns = scalars_->size();
  if (q < 1) throw std::invalid_argument("empty module carrier");
  if (static_cast<int>(add_.size()) != q * q)
    throw std::invalid_argument("module addition table size mismatch");
  if (static_cast<int>(act_.size()) != ns * q)
    throw std::invalid_argument("module action table size mismatch");
  for (auto v : add_)
    if (v >= q) throw std::invalid_argument("module addition entry out of range");
  for (auto v : act_)
    if (v >= q) throw std::invalid_argument("module action entry out of range");

  zero_ = -1;
  for (int z = 0; z < q; ++z) {
    bool ok = true;
    for (int x = 0; x < q; ++x)
      if (add(z, x) != x) {
        ok = false;
        break;
      }
    if (ok) {
      zero_ = z;
      break;
    }
  }
  if (zero_ < 0) throw std::invalid_argument("module without additive identity");

  neg_.assign(q, -1);
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y)
      if (add(x, y) == zero_) {
        neg_[x] = y;
        break;
      }
    if (neg_[x] < 0) throw std::invalid_argument("module element without additive inverse");
  }

  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      if (add(x, y) != add(y, x)) throw std::invalid_argument("module addition not commutative");
      for (int z = 0; z < q; ++z)
        if (add(add(x, y), z) != add(x, add(y, z)))
          throw std::invalid_argument("module addition not associative");
    }

  // Action laws: r(x+y) = rx+ry, (r+s)x = rx+sx, (rs)x = r(sx), 1x = x.
  const FiniteRing& ring = *scalars_;
  for (int x = 0; x < q; ++x)
    if (act(ring.one(), x) != x) throw std::invalid_argument("identity scalar does not act as identity");
  for (int r = 0; r < ns; ++r)
    for (int x = 0; x < q; ++x) {
      for (int y = 0; y < q; ++y)
        if (act(r, add(x, y)) != add(act(r, x), act(r, y)))
          throw std::invalid_argument("action not additive in the module argument");
      for (int s = 0; s < ns; ++s) {
        if (act(ring.add(r, s), x) != add(act(r, x), act(s, x)))
          throw std::invalid_argument("action not additive in the scalar argument");
        if (act(ring.mul(r, s), x) != act(r, act(s, x)))
          throw std::invalid_argument("action not multiplicative");
      }
    }

  if (integer_base_) {
    absorbing_.resize(ns);
    std::iota(absorbing_.begin(), absorbing_.end(), 0);
  } else {
    absorbing_ = ring.non_units();
  }

  if (static_cast<int>(names_.size()) != q)
    throw std::invalid_argument("module name table size mismatch");
  if (generators_.empty()) {
    generators_.resize(q);
    std::iota(generators_.begin(), generators_.end(), 0);
  }
}

inline ModulePtr FiniteModule::from_tables(RingPtr scalars, bool integer_base, int size,
                                           std::vector<std::uint16_t> add_table,
                                           std::vector<std::uint16_t> action_table,
                                           std::vector<std::string> names,
                                           std::vector<int> generators, std::string descriptor,
                                           int carrier_cap) {
  if (size > carrier_cap)
    throw CapError("module carrier size " + std::to_string(size) + " exceeds cap " +
                   std::to_string(carrier_cap));
  auto mod = std::shared_ptr<FiniteModule>(new FiniteModule());
  mod->scalars_ = std::move(scalars);
  mod->integer_base_ = integer_base;
  mod->size_ = size;
  mod->add_ = std::move(add_table);
  mod->act_ = std::move(action_table);
  mod->names_ = std::move(names);
  mod->generators_ = std::move(generators);
  mod->descriptor_ = std::move(descriptor);
  mod->finish();
  return mod;
}

inline ModulePtr FiniteModule::regular(const RingPtr& ring, int carrier_cap) {
  const int n = ring->size();
  std::vector<std::uint16_t> add(n * n), act(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      add[a * n + b] = static_cast<std::uint16_t>(ring->add(a, b));
      act[a * n + b] = static_cast<std::uint16_t>(ring->mul(a, b));
    }
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) names[a] = ring->name(a);
  return from_tables(ring, false, n, std::move(add), std::move(act), std::move(names),
                     {ring->one()}, "regular (" + ring->descriptor() + ")", carrier_cap);
}

namespace detail {

struct CyclicShape {
  std::vector<int> orders;
  int size = 1;
  std::vector<int> stride;

  explicit CyclicShape(const std::vector<int>& ords) : orders(ords) {
    if (orders.empty()) throw std::invalid_argument("at least one cyclic factor required");
    stride.resize(orders.size());
    for (int i = static_cast<int>(orders.size()) - 1; i >= 0; --i) {
      if (orders[i] < 1) throw std::invalid_argument("cyclic factor order must be positive");
      stride[i] = size;
      size *= orders[i];
    }
  }
  // Index layout: last coordinate varies fastest.
  int pack(const std::vector<int>& coord) const {
    int idx = 0;
    for (size_t i = 0; i < orders.size(); ++i) idx += (coord[i] % orders[i]) * stride[i];
    return idx;
  }
  std::vector<int> unpack(int idx) const {
    std::vector<int> coord(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) {
      coord[i] = idx / stride[i] % orders[i];
    }
    return coord;
  }
  std::string name(int idx) const {
    auto c = unpack(idx);
    if (c.size() == 1) return std::to_string(c[0]);
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  }
};

inline ModulePtr build_cyclic(RingPtr scalars, bool integer_base, const std::vector<int>& orders,
                              std::string descriptor, int carrier_cap) {
  CyclicShape shape(orders);
  const int q = shape.size;
  if (q > carrier_cap)
    throw CapError("module carrier size " + std::to_string(q) + " exceeds cap " +
                   std::to_string(carrier_cap));
  const int ns = scalars->size();
  std::vector<std::uint16_t> add(q * q), act(ns * q);
  for (int x = 0; x < q; ++x) {
    auto cx = shape.unpack(x);
    for (int y = 0; y < q; ++y) {
      auto cy = shape.unpack(y);
      std::vector<int> cz(orders.size());
      for (size_t i = 0; i < orders.size(); ++i) cz[i] = (cx[i] + cy[i]) % orders[i];
      add[x * q + y] = static_cast<std::uint16_t>(shape.pack(cz));
    }
    for (int r = 0; r < ns; ++r) {
      std::vector<int> cz(orders.size());
      for (size_t i = 0; i < orders.size(); ++i)
        cz[i] = static_cast<int>(static_cast<long long>(r) * cx[i] % orders[i]);
      act[r * q + x] = static_cast<std::uint16_t>(shape.pack(cz));
    }
  }
  std::vector<std::string> names(q);
  for (int x = 0; x < q; ++x) names[x] = shape.name(x);
  std::vector<int> gens;
  for (size_t i = 0; i < orders.size(); ++i) {
    std::vector<int> coord(orders.size(), 0);
    if (orders[i] > 1) {
      coord[i] = 1;
      gens.push_back(shape.pack(coord));
    }
  }
  return FiniteModule::from_tables(std::move(scalars), integer_base, q, std::move(add),
                                   std::move(act), std::move(names), std::move(gens),
                                   std::move(descriptor), carrier_cap);
}

}  // namespace detail

inline ModulePtr FiniteModule::cyclic_over_ring(const RingPtr& residue_ring,
                                                const std::vector<int>& orders, int carrier_cap) {
  const int n = residue_ring->residue_modulus();
  if (n == 0)
    throw std::invalid_argument("explicit cyclic modules require a residue base ring");
  for (int o : orders)
    if (o < 1 || n % o != 0)
      throw std::invalid_argument("every cyclic factor order must divide the ring modulus");
  std::string desc = "cyclic (" + residue_ring->descriptor() + ")";
  for (int o : orders) desc += " " + std::to_string(o);
  return detail::build_cyclic(residue_ring, false, orders, std::move(desc), carrier_cap);
}

inline ModulePtr FiniteModule::cyclic_over_integers(const std::vector<int>& orders,
                                                    int carrier_cap) {
  long long e = 1;
  for (int o : orders) {
    if (o < 1) throw std::invalid_argument("cyclic factor order must be positive");
    e = std::lcm(e, static_cast<long long>(o));
  }
  if (e < 2) throw std::invalid_argument("the trivial group is not supported as a module");
  if (e > carrier_cap)
    throw CapError("group exponent " + std::to_string(e) + " exceeds cap " +
                   std::to_string(carrier_cap));
  auto scalars = FiniteRing::residue(static_cast<int>(e), std::max(carrier_cap, static_cast<int>(e)));
  std::string desc = "cyclic Z";
  for (int o : orders) desc += " " + std::to_string(o);
  return detail::build_cyclic(std::move(scalars), true, orders, std::move(desc), carrier_cap);
}

inline ModulePtr FiniteModule::product(const ModulePtr& m1, const ModulePtr& m2, int carrier_cap) {
  if (m1->integer_base() || m2->integer_base())
    throw std::invalid_argument("module products are formed over a product of base rings");
  RingPtr ring = FiniteRing::product(m1->scalar_ring(), m2->scalar_ring(), FiniteRing::kDefaultCarrierCap);
  const int q1 = m1->size(), q2 = m2->size();
  const long long q = static_cast<long long>(q1) * q2;
  if (q > carrier_cap)
    throw CapError("module carrier size " + std::to_string(q) + " exceeds cap " +
                   std::to_string(carrier_cap));
  const int sz = static_cast<int>(q);
  const int ns = ring->size();
  const int ns2 = m2->scalar_count();
  auto midx = [q2](int x, int y) { return x * q2 + y; };
  std::vector<std::uint16_t> add(sz * sz), act(ns * sz);
  for (int x1 = 0; x1 < q1; ++x1)
    for (int y1 = 0; y1 < q2; ++y1) {
      const int p = midx(x1, y1);
      for (int x2 = 0; x2 < q1; ++x2)
        for (int y2 = 0; y2 < q2; ++y2)
          add[p * sz + midx(x2, y2)] =
              static_cast<std::uint16_t>(midx(m1->add(x1, x2), m2->add(y1, y2)));
      for (int r = 0; r < ns; ++r) {
        const int r1 = r / ns2, r2 = r % ns2;
        act[r * sz + p] = static_cast<std::uint16_t>(midx(m1->act(r1, x1), m2->act(r2, y1)));
      }
    }
  std::vector<std::string> names(sz);
  for (int x = 0; x < q1; ++x)
    for (int y = 0; y < q2; ++y) names[midx(x, y)] = "(" + m1->name(x) + "," + m2->name(y) + ")";
  std::vector<int> gens;
  for (int g : m1->generators()) gens.push_back(midx(g, m2->zero()));
  for (int g : m2->generators()) gens.push_back(midx(m1->zero(), g));
  return from_tables(std::move(ring), false, sz, std::move(add), std::move(act), std::move(names),
                     std::move(gens),
                     "product (" + m1->descriptor() + ") (" + m2->descriptor() + ")", carrier_cap);
}

inline ModulePtr FiniteModule::quotient(const ModulePtr& m, const Submodule& n, int carrier_cap) {
  if (n.module != m) throw std::invalid_argument("submodule belongs to a different module");
  const int q = m->size();
  std::vector<int> coset_of =
      additive_coset_map(q, [&](int a, int b) { return m->add(a, b); }, n.elements);
  std::vector<int> reps;
  for (int x = 0; x < q; ++x)
    if (coset_of[x] == static_cast<int>(reps.size())) reps.push_back(x);
  const int sz = static_cast<int>(reps.size());

  RingPtr scalars = m->scalar_ring();
  bool integer_base = m->integer_base();
  // For an integer base the exponent can drop in the quotient; rebuild the
  // scalar residue ring at the exact quotient exponent.
  std::vector<int> scalar_map;  // new scalar index -> old scalar index
  if (integer_base) {
    int e = 1;
    for (int i = 0; i < sz; ++i) {
      // order of the coset of reps[i] in the quotient group
      const int acc = coset_of[m->zero()];
      int ord = 0;
      int x = m->zero();
      do {
        x = m->add(x, reps[i]);
        ++ord;
      } while (coset_of[x] != acc);
      e = std::lcm(e, ord);
    }
    if (e < 2) {
      // Trivial quotient group: keep a Z/2 scalar ring so the carrier stays a
      // valid unitary module with a single element.
      e = 2;
    }
    scalars = FiniteRing::residue(e, std::max(FiniteRing::kDefaultCarrierCap, e));
    scalar_map.resize(e);
    for (int r = 0; r < e; ++r) scalar_map[r] = r % m->scalar_count();
  } else {
    scalar_map.resize(m->scalar_count());
    std::iota(scalar_map.begin(), scalar_map.end(), 0);
  }

  const int ns = scalars->size();
  std::vector<std::uint16_t> add(sz * sz), act(ns * sz);
  for (int i = 0; i < sz; ++i) {
    for (int j = 0; j < sz; ++j)
      add[i * sz + j] = static_cast<std::uint16_t>(coset_of[m->add(reps[i], reps[j])]);
    for (int r = 0; r < ns; ++r)
      act[r * sz + i] = static_cast<std::uint16_t>(coset_of[m->act(scalar_map[r], reps[i])]);
  }
  std::vector<std::string> names(sz);
  for (int i = 0; i < sz; ++i) names[i] = "[" + m->name(reps[i]) + "]";
  std::vector<int> gens;
  for (int g : m->generators()) {
    int c = coset_of[g];
    if (std::find(gens.begin(), gens.end(), c) == gens.end()) gens.push_back(c);
  }
  std::string ngens = "[";
  for (size_t i = 0; i < n.generators.size(); ++i)
    ngens += (i ? "," : "") + m->name(n.generators[i]);
  ngens += "]";
  return from_tables(std::move(scalars), integer_base, sz, std::move(add), std::move(act),
                     std::move(names), std::move(gens),
                     "quotient (" + m->descriptor() + ") " + ngens, carrier_cap);
}

}  // namespace modlab

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modlab/util.hpp"

namespace modlab {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

struct Ideal;

/// A finite commutative ring with identity, materialized as full operation
/// tables so that every quantified predicate becomes a finite loop.
///
/// Elements are indices into the carrier; an index is only meaningful
/// relative to the ring that issued it.
class FiniteRing {
 public:
  static constexpr int kDefaultCarrierCap = 256;

  int size() const { return size_; }
  int add(int a, int b) const { return add_[a * size_ + b]; }
  int mul(int a, int b) const { return mul_[a * size_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int zero() const { return zero_; }
  int one() const { return one_; }
  bool is_unit(int a) const { return unit_mask_[a] != 0; }
  const std::vector<int>& units() const { return units_; }
  const std::vector<int>& non_units() const { return non_units_; }
  const std::string& name(int a) const { return names_[a]; }
  const std::string& descriptor() const { return descriptor_; }

  /// n when this ring was built as Z/n, 0 otherwise.
  int residue_modulus() const { return residue_modulus_; }

  /// a^k with k >= 0 (a^0 = 1).
  int pow(int a, int k) const {
    int r = one_;
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  /// Z/n, elements 0..n-1.  Requires n >= 2.
  static RingPtr residue(int n, int carrier_cap = kDefaultCarrierCap);

  /// Product ring; element (a, b) has index a*|B| + b.
  static RingPtr product(const RingPtr& a, const RingPtr& b,
                         int carrier_cap = kDefaultCarrierCap);

  /// Quotient by a proper ideal; elements are additive cosets named after
  /// their smallest representative.
  static RingPtr quotient(const RingPtr& r, const Ideal& ideal,
                          int carrier_cap = kDefaultCarrierCap);

  /// Build from explicit tables and verify every ring axiom.
  static RingPtr from_tables(int size, std::vector<std::uint16_t> add_table,
                             std::vector<std::uint16_t> mul_table,
                             std::vector<std::string> names,
                             std::string descriptor,
                             int carrier_cap = kDefaultCarrierCap,
                             int residue_modulus = 0);

 private:
  FiniteRing() = default;

  void finish();  // verifies axioms, locates 0/1, computes units

  int size_ = 0;
  int zero_ = -1;
  int one_ = -1;
  std::vector<std::uint16_t> add_;
  std::vector<std::uint16_t> mul_;
  std::vector<int> neg_;
  std::vector<std::uint8_t> unit_mask_;
  std::vector<int> units_;
  std::vector<int> non_units_;
  std::vector<std::string> names_;
  std::string descriptor_;
  int residue_modulus_ = 0;
};

/// A finite carrier subset closed under addition and scalar multiplication,
/// together with a generator list whose span is exactly the carrier.
struct Ideal {
  RingPtr ring;
  std::vector<std::uint8_t> mask;
  std::vector<int> elements;
  std::vector<int> generators;

  bool contains(int a) const { return mask[a] != 0; }
  int size() const { return static_cast<int>(elements.size()); }
  bool is_whole() const { return contains(ring->one()); }
  bool is_zero() const { return size() == 1; }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.ring == b.ring && a.mask == b.mask;
  }
};

inline bool ideal_subset(const Ideal& a, const Ideal& b) {
  if (a.ring != b.ring) throw std::invalid_argument("ideals over different rings");
  for (int x : a.elements)
    if (!b.contains(x)) return false;
  return true;
}

namespace detail {

inline std::vector<int> mask_elements(const std::vector<std::uint8_t>& mask) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(mask.size()); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

/// Fixed-point closure of a subset under ring addition and multiplication
/// by arbitrary ring elements.
inline std::vector<std::uint8_t> ideal_closure(const FiniteRing& ring,
                                               const std::vector<int>& seed) {
  const int n = ring.size();
  std::vector<std::uint8_t> mask(n, 0);
  std::vector<int> work;
  auto push = [&](int x) {
    if (!mask[x]) {
      mask[x] = 1;
      work.push_back(x);
    }
  };
  push(ring.zero());
  for (int g : seed) push(g);
  std::vector<int> members;
  while (!work.empty()) {
    int x = work.back();
    work.pop_back();
    for (int r = 0; r < n; ++r) push(ring.mul(r, x));
    for (int y : members) push(ring.add(x, y));
    push(ring.add(x, x));
    members.push_back(x);
  }
  return mask;
}

/// Greedy small generating set for an ideal given as a mask; deterministic
/// (scans element indices in increasing order).
inline std::vector<int> reduce_ideal_generators(const FiniteRing& ring,
                                                const std::vector<std::uint8_t>& mask) {
  std::vector<int> gens;
  std::vector<std::uint8_t> span = ideal_closure(ring, {});
  for (int x = 0; x < ring.size(); ++x) {
    if (!mask[x] || span[x]) continue;
    gens.push_back(x);
    span = ideal_closure(ring, gens);
    if (span == mask) break;
  }
  return gens;
}

}  // namespace detail

inline Ideal make_ideal_from_mask(const RingPtr& ring, std::vector<std::uint8_t> mask) {
  Ideal ideal;
  ideal.ring = ring;
  ideal.elements = detail::mask_elements(mask);
  ideal.generators = detail::reduce_ideal_generators(*ring, mask);
  ideal.mask = std::move(mask);
  return ideal;
}

/// Smallest ideal containing the given generators.
inline Ideal ideal_span(const RingPtr& ring, const std::vector<int>& generators) {
  for (int g : generators)
    if (g < 0 || g >= ring->size())
      throw std::invalid_argument("generator outside the ring carrier");
  Ideal ideal;
  ideal.ring = ring;
  ideal.mask = detail::ideal_closure(*ring, generators);
  ideal.elements = detail::mask_elements(ideal.mask);
  ideal.generators = generators;
  return ideal;
}

inline Ideal zero_ideal(const RingPtr& ring) { return ideal_span(ring, {}); }
inline Ideal whole_ring_ideal(const RingPtr& ring) { return ideal_span(ring, {ring->one()}); }

enum class IdealOp { sum, product, intersection, colon };

inline Ideal ideal_combine(const Ideal& a, const Ideal& b, IdealOp op) {
  if (a.ring != b.ring) throw std::invalid_argument("ideals over different rings");
  const FiniteRing& ring = *a.ring;
  const int n = ring.size();
  switch (op) {
    case IdealOp::sum: {
      std::vector<int> gens = a.generators;
      gens.insert(gens.end(), b.generators.begin(), b.generators.end());
      return ideal_span(a.ring, gens);
    }
    case IdealOp::product: {
      std::vector<int> gens;
      for (int x : a.generators)
        for (int y : b.generators) gens.push_back(ring.mul(x, y));
      return ideal_span(a.ring, gens);
    }
    case IdealOp::intersection: {
      std::vector<std::uint8_t> mask(n, 0);
      for (int i = 0; i < n; ++i) mask[i] = a.mask[i] && b.mask[i];
      return make_ideal_from_mask(a.ring, std::move(mask));
    }
    case IdealOp::colon: {
      // (a : b) = { r : r*b is contained in a }
      std::vector<std::uint8_t> mask(n, 0);
      for (int r = 0; r < n; ++r) {
        bool ok = true;
        for (int y : b.elements)
          if (!a.contains(ring.mul(r, y))) {
            ok = false;
            break;
          }
        mask[r] = ok;
      }
      return make_ideal_from_mask(a.ring, std::move(mask));
    }
  }
  throw std::logic_error("unreachable");
}

/// { r : r^k lies in the ideal for some k >= 1 }.  The exponent bound equals
/// the carrier size: the power sequence of any element enters a cycle within
/// that many steps.
inline Ideal radical(const Ideal& ideal) {
  const FiniteRing& ring = *ideal.ring;
  const int n = ring.size();
  std::vector<std::uint8_t> mask(n, 0);
  for (int r = 0; r < n; ++r) {
    int p = r;
    for (int k = 1; k <= n; ++k) {
      if (ideal.contains(p)) {
        mask[r] = 1;
        break;
      }
      p = ring.mul(p, r);
    }
  }
  return make_ideal_from_mask(ideal.ring, std::move(mask));
}

/// Classification record for one ideal.  Every false flag carries the first
/// lexicographic witness (element indices scanned in increasing order).
struct IdealReport {
  bool proper = false;
  bool prime = false;
  bool maximal = false;
  bool primary = false;
  bool two_absorbing_primary = false;
  bool one_absorbing_primary = false;

  std::optional<std::array<int, 2>> prime_witness;      // (a, b)
  std::optional<int> maximal_witness;                   // x with I + (x) still proper
  std::optional<std::array<int, 2>> primary_witness;    // (a, b)
  std::optional<std::array<int, 3>> two_absorbing_primary_witness;  // (a, b, c)
  std::optional<std::array<int, 3>> one_absorbing_primary_witness;  // (a, b, c)
};

inline IdealReport classify_ideal(const Ideal& ideal) {
  IdealReport rep;
  const FiniteRing& ring = *ideal.ring;
  const int n = ring.size();
  rep.proper = !ideal.is_whole();
  if (!rep.proper) return rep;

  const Ideal rad = radical(ideal);

  // prime: ab in I forces a in I or b in I.  Symmetric in (a, b), so the
  // first lexicographic witness has a <= b.
  rep.prime = true;
  for (int a = 0; a < n && rep.prime; ++a) {
    if (ideal.contains(a)) continue;
    for (int b = a; b < n; ++b) {
      if (ideal.contains(b)) continue;
      if (ideal.contains(ring.mul(a, b))) {
        rep.prime = false;
        rep.prime_witness = {{a, b}};
        break;
      }
    }
  }

  // maximal: adjoining any element outside I spans the whole ring.
  rep.maximal = true;
  for (int x = 0; x < n; ++x) {
    if (ideal.contains(x)) continue;
    std::vector<int> gens = ideal.generators;
    gens.push_back(x);
    if (!ideal_span(ideal.ring, gens).is_whole()) {
      rep.maximal = false;
      rep.maximal_witness = x;
      break;
    }
  }

  // primary: ab in I forces a in I or b in rad(I).
  rep.primary = true;
  for (int a = 0; a < n && rep.primary; ++a) {
    if (ideal.contains(a)) continue;
    for (int b = 0; b < n; ++b) {
      if (rad.contains(b)) continue;
      if (ideal.contains(ring.mul(a, b))) {
        rep.primary = false;
        rep.primary_witness = {{a, b}};
        break;
      }
    }
  }

  // 2-absorbing primary: abc in I forces ab in I, or ac in rad(I), or
  // bc in rad(I); a, b, c range over the whole carrier.  Symmetric in
  // (a, b).
  rep.two_absorbing_primary = true;
  for (int a = 0; a < n && rep.two_absorbing_primary; ++a) {
    for (int b = a; b < n && rep.two_absorbing_primary; ++b) {
      const int ab = ring.mul(a, b);
      if (ideal.contains(ab)) continue;
      for (int c = 0; c < n; ++c) {
        if (!ideal.contains(ring.mul(ab, c))) continue;
        if (rad.contains(ring.mul(a, c))) continue;
        if (rad.contains(ring.mul(b, c))) continue;
        rep.two_absorbing_primary = false;
        rep.two_absorbing_primary_witness = {{a, b, c}};
        break;
      }
    }
  }

  // 1-absorbing primary: for non-units a, b, c, abc in I forces ab in I
  // or c in rad(I).  Symmetric in (a, b).
  rep.one_absorbing_primary = true;
  const std::vector<int>& nu = ring.non_units();
  for (size_t i = 0; i < nu.size() && rep.one_absorbing_primary; ++i) {
    for (size_t j = i; j < nu.size() && rep.one_absorbing_primary; ++j) {
      const int a = nu[i], b = nu[j];
      const int ab = ring.mul(a, b);
      if (ideal.contains(ab)) continue;
      for (int c : nu) {
        if (rad.contains(c)) continue;
        if (!ideal.contains(ring.mul(ab, c))) continue;
        rep.one_absorbing_primary = false;
        rep.one_absorbing_primary_witness = {{a, b, c}};
        break;
      }
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// FiniteRing construction
// ---------------------------------------------------------------------------

inline void FiniteRing::finish() {
  const int n = size_;
  if (n < 1) throw std::invalid_argument("empty carrier");
  if (static_cast<int>(add_.size()) != n * n || static_cast<int>(mul_.size()) != n * n)
    throw std::invalid_argument("operation table size mismatch");
  for (auto v : add_)
    if (v >= n) throw std::invalid_argument("addition table entry out of range");
  for (auto v : mul_)
    if (v >= n) throw std::invalid_argument("multiplication table entry out of range");

  // Locate the additive identity.
  zero_ = -1;
  for (int z = 0; z < n; ++z) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (add(z, a) != a || add(a, z) != a) {
        ok = false;
        break;
      }
    if (ok) {
      zero_ = z;
      break;
    }
  }
  if (zero_ < 0) throw std::invalid_argument("no additive identity");

  // Additive inverses.
  neg_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (add(a, b) == zero_) {
        neg_[a] = b;
        break;
      }
    if (neg_[a] < 0) throw std::invalid_argument("missing additive inverse");
  }

  // Multiplicative identity, required distinct from zero.
  one_ = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n; ++a)
      if (mul(e, a) != a || mul(a, e) != a) {
        ok = false;
        break;
      }
    if (ok) {
      one_ = e;
      break;
    }
  }
  if (one_ < 0) throw std::invalid_argument("no multiplicative identity");
  if (one_ == zero_) throw std::invalid_argument("identity equals zero");

  // Commutativity, associativity, distributivity on the full tables.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (add(a, b) != add(b, a)) throw std::invalid_argument("addition not commutative");
      if (mul(a, b) != mul(b, a)) throw std::invalid_argument("multiplication not commutative");
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c)))
          throw std::invalid_argument("addition not associative");
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw std::invalid_argument("multiplication not associative");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
          throw std::invalid_argument("multiplication does not distribute");
      }

  unit_mask_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == one_) {
        unit_mask_[a] = 1;
        break;
      }
  units_.clear();
  non_units_.clear();
  for (int a = 0; a < n; ++a) (unit_mask_[a] ? units_ : non_units_).push_back(a);

  if (static_cast<int>(names_.size()) != n) throw std::invalid_argument("name table size mismatch");
}

inline RingPtr FiniteRing::from_tables(int size, std::vector<std::uint16_t> add_table,
                                       std::vector<std::uint16_t> mul_table,
                                       std::vector<std::string> names,
                                       std::string descriptor, int carrier_cap,
                                       int residue_modulus) {
  if (size > carrier_cap)
    throw CapError("ring carrier size " + std::to_string(size) + " exceeds cap " +
                   std::to_string(carrier_cap));
  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  ring->size_ = size;
  ring->add_ = std::move(add_table);
  ring->mul_ = std::move(mul_table);
  ring->names_ = std::move(names);
  ring->descriptor_ = std::move(descriptor);
  ring->residue_modulus_ = residue_modulus;
  ring->finish();
  return ring;
}

inline RingPtr FiniteRing::residue(int n, int carrier_cap) {
  if (n < 2) throw std::invalid_argument("residue ring modulus must be at least 2");
  std::vector<std::uint16_t> add(n * n), mul(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      add[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
      mul[a * n + b] = static_cast<std::uint16_t>((a * b) % n);
    }
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) names[a] = std::to_string(a);
  return from_tables(n, std::move(add), std::move(mul), std::move(names),
                     "zn " + std::to_string(n), carrier_cap, n);
}

inline RingPtr FiniteRing::product(const RingPtr& a, const RingPtr& b, int carrier_cap) {
  const int na = a->size(), nb = b->size();
  const long long n = static_cast<long long>(na) * nb;
  if (n > carrier_cap)
    throw CapError("product ring carrier size " + std::to_string(n) + " exceeds cap " +
                   std::to_string(carrier_cap));
  const int sz = static_cast<int>(n);
  auto idx = [nb](int x, int y) { return x * nb + y; };
  std::vector<std::uint16_t> add(sz * sz), mul(sz * sz);
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2) {
          const int p = idx(x1, y1), q = idx(x2, y2);
          add[p * sz + q] = static_cast<std::uint16_t>(idx(a->add(x1, x2), b->add(y1, y2)));
          mul[p * sz + q] = static_cast<std::uint16_t>(idx(a->mul(x1, x2), b->mul(y1, y2)));
        }
  std::vector<std::string> names(sz);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) names[idx(x, y)] = "(" + a->name(x) + "," + b->name(y) + ")";
  return from_tables(sz, std::move(add), std::move(mul), std::move(names),
                     "product (" + a->descriptor() + ") (" + b->descriptor() + ")", carrier_cap);
}

inline RingPtr FiniteRing::quotient(const RingPtr& r, const Ideal& ideal, int carrier_cap) {
  if (ideal.ring != r) throw std::invalid_argument("ideal belongs to a different ring");
  if (ideal.is_whole()) throw std::invalid_argument("quotient by an improper ideal");
  const int n = r->size();
  std::vector<int> coset_of =
      additive_coset_map(n, [&](int a, int b) { return r->add(a, b); }, ideal.elements);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x)
    if (coset_of[x] == static_cast<int>(reps.size())) reps.push_back(x);
  const int sz = static_cast<int>(reps.size());
  std::vector<std::uint16_t> add(sz * sz), mul(sz * sz);
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) {
      add[i * sz + j] = static_cast<std::uint16_t>(coset_of[r->add(reps[i], reps[j])]);
      mul[i * sz + j] = static_cast<std::uint16_t>(coset_of[r->mul(reps[i], reps[j])]);
    }
  std::vector<std::string> names(sz);
  for (int i = 0; i < sz; ++i) names[i] = r->name(reps[i]);
  std::string igens = "[";
  for (size_t i = 0; i < ideal.generators.size(); ++i)
    igens += (i ? "," : "") + r->name(ideal.generators[i]);
  igens += "]";
  return from_tables(sz, std::move(add), std::move(mul), std::move(names),
                     "quotient (" + r->descriptor() + ") " + igens, carrier_cap);
}

}  // namespace modlab

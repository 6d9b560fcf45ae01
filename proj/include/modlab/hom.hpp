#pragma once

#include <deque>
#include <utility>

#include "modlab/module.hpp"

namespace modlab {

/// A module homomorphism given by a full element map, built from generator
/// images and verified to be well-defined and linear.
///
/// Both sides must share the base: identical scalar ring for ring-base
/// modules, or both integer-base (the group exponents may differ, linearity
/// is checked with integer semantics).
class ModuleHom {
 public:
  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  int operator()(int m) const { return map_[m]; }
  const std::vector<int>& map() const { return map_; }

  bool surjective() const {
    std::vector<std::uint8_t> hit(target_->size(), 0);
    for (int v : map_) hit[v] = 1;
    for (auto h : hit)
      if (!h) return false;
    return true;
  }

  Submodule kernel() const {
    std::vector<std::uint8_t> mask(source_->size(), 0);
    for (int m = 0; m < source_->size(); ++m) mask[m] = map_[m] == target_->zero();
    return submodule_from_mask(source_, std::move(mask));
  }

  /// Setwise image of a submodule; already closed for a homomorphism.
  Submodule image(const Submodule& n) const {
    if (n.module != source_) throw std::invalid_argument("submodule not in the source module");
    std::vector<std::uint8_t> mask(target_->size(), 0);
    for (int m : n.elements) mask[map_[m]] = 1;
    return submodule_from_mask(target_, std::move(mask));
  }

  Submodule image_whole() const { return image(whole_submodule(source_)); }

  Submodule preimage(const Submodule& n) const {
    if (n.module != target_) throw std::invalid_argument("submodule not in the target module");
    std::vector<std::uint8_t> mask(source_->size(), 0);
    for (int m = 0; m < source_->size(); ++m) mask[m] = n.contains(map_[m]);
    return submodule_from_mask(source_, std::move(mask));
  }

  static ModuleHom identity(const ModulePtr& m) {
    std::vector<int> map(m->size());
    std::iota(map.begin(), map.end(), 0);
    return ModuleHom(m, m, std::move(map));
  }

  /// m -> r*m as an endomorphism of M.
  static ModuleHom scalar_multiple(const ModulePtr& m, int r) {
    if (r < 0 || r >= m->scalar_count()) throw std::invalid_argument("scalar out of range");
    std::vector<int> map(m->size());
    for (int x = 0; x < m->size(); ++x) map[x] = m->act(r, x);
    return ModuleHom(m, m, std::move(map));
  }

  /// Extend generator images to the full map, then verify additivity and
  /// scalar compatibility exhaustively; throws if the images do not define a
  /// homomorphism or the generators do not span the source.
  static ModuleHom from_generator_images(const ModulePtr& source, const ModulePtr& target,
                                         const std::vector<std::pair<int, int>>& images) {
    check_compatible(source, target);
    const int q = source->size();
    std::vector<int> map(q, -1);
    map[source->zero()] = target->zero();
    std::deque<int> work;
    auto assign = [&](int x, int v) {
      if (map[x] < 0) {
        map[x] = v;
        work.push_back(x);
        return true;
      }
      return map[x] == v;
    };
    work.push_back(source->zero());
    for (auto [g, img] : images) {
      if (g < 0 || g >= q || img < 0 || img >= target->size())
        throw std::invalid_argument("generator image out of range");
      if (!assign(g, img))
        throw std::invalid_argument("conflicting generator images");
    }
    std::vector<int> known;
    while (!work.empty()) {
      int x = work.front();
      work.pop_front();
      for (int r = 0; r < source->scalar_count(); ++r) {
        int rx = source->act(r, x);
        int rv = target->act(target_scalar(source, target, r), map[x]);
        if (!assign(rx, rv)) throw std::invalid_argument("generator images are not linear");
      }
      for (int y : known) {
        int s = source->add(x, y);
        int v = target->add(map[x], map[y]);
        if (!assign(s, v)) throw std::invalid_argument("generator images are not additive");
      }
      if (!assign(source->add(x, x), target->add(map[x], map[x])))
        throw std::invalid_argument("generator images are not additive");
      known.push_back(x);
    }
    for (int x = 0; x < q; ++x)
      if (map[x] < 0) throw std::invalid_argument("generators do not span the source module");
    return ModuleHom(source, target, std::move(map));
  }

  ModuleHom(ModulePtr source, ModulePtr target, std::vector<int> map)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
    check_compatible(source_, target_);
    verify();
  }

 private:
  static void check_compatible(const ModulePtr& s, const ModulePtr& t) {
    if (s->integer_base() != t->integer_base())
      throw std::invalid_argument("source and target have different base kinds");
    if (!s->integer_base() && s->scalar_ring() != t->scalar_ring())
      throw std::invalid_argument("source and target are modules over different rings");
  }

  /// Image of a source scalar on the target side.  For ring bases the rings
  /// coincide; for integer bases residues are mapped along Z -> Z/e2.
  static int target_scalar(const ModulePtr& s, const ModulePtr& t, int r) {
    if (!s->integer_base()) return r;
    return r % t->scalar_count();
  }

  void verify() const {
    const int q = source_->size();
    if (static_cast<int>(map_.size()) != q) throw std::invalid_argument("hom map size mismatch");
    for (int v : map_)
      if (v < 0 || v >= target_->size()) throw std::invalid_argument("hom map entry out of range");
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        if (map_[source_->add(x, y)] != target_->add(map_[x], map_[y]))
          throw std::invalid_argument("map is not additive");
    for (int r = 0; r < source_->scalar_count(); ++r)
      for (int x = 0; x < q; ++x)
        if (map_[source_->act(r, x)] !=
            target_->act(target_scalar(source_, target_, r), map_[x]))
          throw std::invalid_argument("map is not compatible with the scalar action");
    if (source_->integer_base()) {
      // The source exponent must annihilate the image so that the residue
      // representation of integer scalars is consistent on both sides.
      const int e1 = source_->scalar_count();
      for (int x = 0; x < q; ++x) {
        int v = target_->act(e1 % target_->scalar_count(), map_[x]);
        if (v != target_->zero())
          throw std::invalid_argument("source exponent does not annihilate the image");
      }
    }
  }

  ModulePtr source_;
  ModulePtr target_;
  std::vector<int> map_;
};

/// Quotient module together with the canonical projection.
inline std::pair<ModulePtr, ModuleHom> quotient_with_projection(const ModulePtr& m,
                                                                const Submodule& n) {
  ModulePtr q = FiniteModule::quotient(m, n);
  std::vector<int> coset_of = additive_coset_map(
      m->size(), [&](int a, int b) { return m->add(a, b); }, n.elements);
  return {q, ModuleHom(m, q, std::move(coset_of))};
}

enum class HomDirection { image, preimage };

/// Directional transfer of a submodule along a homomorphism.  The image
/// direction demands a surjective map; preimages are taken for any map.
inline Submodule hom_transfer(const ModuleHom& f, HomDirection dir, const Submodule& x) {
  if (dir == HomDirection::image) {
    if (!f.surjective())
      throw std::invalid_argument("image transfer requires a surjective homomorphism");
    return f.image(x);
  }
  return f.preimage(x);
}

}  // namespace modlab

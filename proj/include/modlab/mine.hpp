#pragma once

#include <functional>
#include <optional>
#include <sstream>

#include "modlab/intclassify.hpp"
#include "modlab/module.hpp"

namespace modlab {

/// Flag query for counterexample mining: every flag in must_hold has to be
/// true and every flag in must_fail false on the candidate's report.
struct MineQuery {
  std::vector<std::string> must_hold;
  std::vector<std::string> must_fail;
};

inline const std::vector<std::string>& mine_flag_names() {
  static const std::vector<std::string> names = {
      "proper", "prime", "primary", "two_absorbing", "two_absorbing_primary",
      "one_absorbing_primary"};
  return names;
}

namespace minedetail {

inline std::optional<std::string> canonical_flag(std::string s) {
  for (auto& c : s)
    if (c == '-') c = '_';
  if (s == "2a") s = "two_absorbing";
  if (s == "2ap" || s == "2ap_primary") s = "two_absorbing_primary";
  if (s == "1ap" || s == "1ap_primary") s = "one_absorbing_primary";
  for (const auto& n : mine_flag_names())
    if (n == s) return s;
  return std::nullopt;
}

inline bool flag_of(const ClassificationReport& r, const std::string& name) {
  if (name == "proper") return r.proper;
  if (name == "prime") return r.prime;
  if (name == "primary") return r.primary;
  if (name == "two_absorbing") return r.two_absorbing;
  if (name == "two_absorbing_primary") return r.two_absorbing_primary;
  if (name == "one_absorbing_primary") return r.one_absorbing_primary;
  throw std::invalid_argument("unknown flag: " + name);
}

}  // namespace minedetail

/// Parse "prime=+,primary=-" style queries (comma or space separated).
inline MineQuery parse_mine_query(const std::string& text) {
  MineQuery q;
  std::string token;
  std::istringstream in(text);
  auto handle = [&](const std::string& t) {
    if (t.empty()) return;
    auto eq = t.find('=');
    if (eq == std::string::npos || eq + 2 != t.size() || (t[eq + 1] != '+' && t[eq + 1] != '-'))
      throw std::invalid_argument("query terms look like flag=+ or flag=-: " + t);
    auto flag = minedetail::canonical_flag(t.substr(0, eq));
    if (!flag) throw std::invalid_argument("unknown flag: " + t.substr(0, eq));
    (t[eq + 1] == '+' ? q.must_hold : q.must_fail).push_back(*flag);
  };
  std::string norm = text;
  for (auto& c : norm)
    if (c == ',') c = ' ';
  std::istringstream words(norm);
  while (words >> token) handle(token);
  if (q.must_hold.empty() && q.must_fail.empty())
    throw std::invalid_argument("empty mine query");
  return q;
}

inline bool query_matches(const MineQuery& q, const ClassificationReport& r) {
  for (const auto& f : q.must_hold)
    if (!minedetail::flag_of(r, f)) return false;
  for (const auto& f : q.must_fail)
    if (minedetail::flag_of(r, f)) return false;
  return true;
}

/// One mined witness: the matching submodule with its report and a
/// self-contained reproducer document.
struct MineWitness {
  std::string family_item;   // human-readable item tag, e.g. "zn 12"
  std::string target_name;   // always "N"
  std::string spec_text;     // reproducer instance document
  ModulePtr module;
  Submodule sub;
  ClassificationReport report;
  long long position = 0;  // scan position inside the family item
};

/// Families enumerate modules in a documented deterministic order and
/// classify every submodule in lattice order:
///   zn           regular Z/n for n = 2, 3, ... up to `zn <hi>` or 100
///   zn:<n>       the single module regular Z/n
///   zn:<lo>-<hi> regular Z/n over a range
///   products     regular Z/p x Z/q over the product ring, p <= q in {2,3,5}
///   explicit     the fixed explicit list (Klein four over F2 and over Z,
///                Z2 x Z4 over Z, Z2 x Z2 x Z3 over Z)
struct MineFamilyItem {
  std::string tag;
  ModulePtr module;
  std::function<std::string(const Submodule&)> spec_writer;
};

namespace minedetail {

inline std::string gens_text(const ModulePtr& mod, const Submodule& sub) {
  std::string s = "[";
  for (size_t i = 0; i < sub.generators.size(); ++i)
    s += (i ? "," : "") + mod->name(sub.generators[i]);
  return s + "]";
}

inline MineFamilyItem zn_item(int n) {
  auto mod = FiniteModule::regular(FiniteRing::residue(n));
  return {"zn " + std::to_string(n), mod, [mod, n](const Submodule& sub) {
            return "version 1\nring zn " + std::to_string(n) + "\nmodule regular\nsub N = " +
                   gens_text(mod, sub) + "\n";
          }};
}

inline MineFamilyItem product_item(int p, int q) {
  auto m1 = FiniteModule::regular(FiniteRing::residue(p));
  auto m2 = FiniteModule::regular(FiniteRing::residue(q));
  auto mod = FiniteModule::product(m1, m2);
  std::string ring = "product (zn " + std::to_string(p) + ") (zn " + std::to_string(q) + ")";
  return {"product " + std::to_string(p) + "x" + std::to_string(q), mod,
          [mod, ring](const Submodule& sub) {
            return "version 1\nring " + ring + "\nmodule product (regular) (regular)\nsub N = " +
                   gens_text(mod, sub) + "\n";
          }};
}

inline MineFamilyItem cyclic_ring_item(int n, const std::vector<int>& orders) {
  auto mod = FiniteModule::cyclic_over_ring(FiniteRing::residue(n), orders);
  std::string mtext = "cyclic";
  for (int o : orders) mtext += " " + std::to_string(o);
  std::string ring = "zn " + std::to_string(n);
  return {mtext + " over " + ring, mod, [mod, ring, mtext](const Submodule& sub) {
            return "version 1\nring " + ring + "\nmodule " + mtext + "\nsub N = " +
                   gens_text(mod, sub) + "\n";
          }};
}

inline MineFamilyItem cyclic_int_item(const std::vector<int>& orders) {
  auto mod = FiniteModule::cyclic_over_integers(orders);
  std::string mtext = "cyclic";
  for (int o : orders) mtext += " " + std::to_string(o);
  return {mtext + " over Z", mod, [mod, mtext](const Submodule& sub) {
            return "version 1\nring Z\nmodule " + mtext + "\nsub N = " + gens_text(mod, sub) +
                   "\n";
          }};
}

}  // namespace minedetail

inline std::vector<MineFamilyItem> mine_family(const std::string& family) {
  using namespace minedetail;
  std::vector<MineFamilyItem> out;
  auto starts_with = [](const std::string& s, const std::string& p) {
    return s.rfind(p, 0) == 0;
  };
  if (family == "zn") {
    for (int n = 2; n <= 100; ++n) out.push_back(zn_item(n));
    return out;
  }
  if (starts_with(family, "zn:")) {
    const std::string range = family.substr(3);
    auto dash = range.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(zn_item(std::stoi(range)));
      } else {
        int lo = std::stoi(range.substr(0, dash));
        int hi = std::stoi(range.substr(dash + 1));
        if (lo < 2 || hi < lo) throw std::invalid_argument("bad range");
        for (int n = lo; n <= hi; ++n) out.push_back(zn_item(n));
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad zn family range: " + family);
    }
    return out;
  }
  if (family == "products") {
    for (auto [p, q] :
         std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 5}, {3, 3}, {3, 5}, {5, 5}})
      out.push_back(product_item(p, q));
    return out;
  }
  if (family == "explicit") {
    out.push_back(cyclic_ring_item(2, {2, 2}));
    out.push_back(cyclic_int_item({2, 2}));
    out.push_back(cyclic_int_item({2, 4}));
    out.push_back(cyclic_int_item({2, 2, 3}));
    return out;
  }
  throw std::invalid_argument("unknown family: " + family);
}

struct MineItemResult {
  std::vector<MineWitness> witnesses;
  long long checked = 0;  // submodules classified in this item
};

/// Classify every submodule of one family item in lattice order and keep the
/// query matches, each tagged with its scan position.
inline MineItemResult mine_item(const MineQuery& query, const MineFamilyItem& item) {
  MineItemResult out;
  auto lat = enumerate_submodules(item.module);
  for (size_t i = 0; i < lat.subs.size(); ++i) {
    ++out.checked;
    auto rep = classify_submodule(lat.subs[i], lat);
    if (!query_matches(query, rep)) continue;
    MineWitness w;
    w.family_item = item.tag;
    w.target_name = "N";
    w.spec_text = item.spec_writer(lat.subs[i]);
    w.module = item.module;
    w.sub = lat.subs[i];
    w.report = std::move(rep);
    w.position = static_cast<long long>(i);
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

/// Enumerate the family in order, classify every submodule, and keep the
/// query matches.  `budget` caps the number of classified submodules; the
/// cap is applied in family order, so results never depend on scheduling.
inline std::vector<MineWitness> mine(const MineQuery& query, const std::string& family,
                                     long long budget = 1'000'000'000) {
  std::vector<MineWitness> out;
  long long remaining = budget;
  for (const auto& item : mine_family(family)) {
    if (remaining <= 0) break;
    MineItemResult r = mine_item(query, item);
    const long long take = std::min(r.checked, remaining);
    for (auto& w : r.witnesses)
      if (w.position < take) out.push_back(std::move(w));
    remaining -= take;
  }
  return out;
}

}  // namespace modlab

#pragma once

#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "modlab/corpus.hpp"
#include "modlab/laws.hpp"
#include "modlab/mine.hpp"
#include "modlab/report.hpp"
#include "modlab/specfile.hpp"

namespace modlab {

// Exit codes: 0 success, 1 law violation or unexpected vacuity, 2 usage
// error, 3 resource cap exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

namespace clidetail {

inline std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json classify_document(const InstanceSpec& spec, const std::string& target) {
  json doc;
  if (spec.integer_world()) {
    const IntLattice* lat = spec.find_int_sub(target);
    if (!lat) throw std::out_of_range("unknown target: " + target);
    doc["kind"] = "int_submodule";
    doc["spec"] = spec.canonical_text;
    doc["target"] = target;
    doc["report"] = to_json(classify_int_submodule(*lat));
    return doc;
  }
  const Submodule* sub = spec.find_sub(target);
  if (!sub) throw std::out_of_range("unknown target: " + target);
  auto lattice = enumerate_submodules(spec.module);
  doc["kind"] = "submodule";
  doc["spec"] = spec.canonical_text;
  doc["target"] = target;
  doc["report"] = to_json(classify_submodule(*sub, lattice), spec.module);
  return doc;
}

inline void print_flag_table(std::ostream& out, const json& report) {
  for (const auto& key : {"proper", "prime", "primary", "two_absorbing",
                          "two_absorbing_primary", "one_absorbing_primary"}) {
    if (!report.contains(key)) continue;
    out << "  " << std::left << std::setw(24) << key
        << (report[key].get<bool>() ? "yes" : "no") << "\n";
  }
  if (report.contains("witnesses"))
    out << "  witnesses              " << report["witnesses"].dump() << "\n";
  for (const auto& key : {"colon_ideal", "colon_radical", "m_radical", "saturation"}) {
    if (!report.contains(key)) continue;
    out << "  " << std::left << std::setw(24) << key << report[key].dump() << "\n";
  }
}

}  // namespace clidetail

inline int cmd_classify(const std::string& spec_path, const std::string& target,
                        const std::string& format, std::ostream& out, std::ostream& err) {
  try {
    InstanceSpec spec = parse_spec(clidetail::read_file(spec_path));
    json doc = clidetail::classify_document(spec, target);
    if (format == "table") {
      out << "target " << target << " (" << doc["kind"].get<std::string>() << ")\n";
      clidetail::print_flag_table(out, doc["report"]);
    } else {
      out << doc.dump() << "\n";
    }
    return kExitOk;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::out_of_range& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

inline int cmd_verify(std::vector<std::string> law_ids, const std::string& corpus_name,
                      std::uint64_t seed, long long budget, int workers,
                      const std::string& format, std::ostream& out, std::ostream& err) {
  try {
    std::vector<const Law*> laws;
    if (law_ids.empty() || (law_ids.size() == 1 && law_ids[0] == "all")) {
      for (const auto& law : law_catalog()) laws.push_back(&law);
    } else {
      for (const auto& id : law_ids) {
        const Law* law = find_law(id);
        if (!law) {
          err << "unknown law id: " << id << "\n";
          return kExitUsage;
        }
        laws.push_back(law);
      }
    }
    Corpus corpus = build_corpus(corpus_name, seed);

    std::vector<LawReport> reports(laws.size());
    if (workers <= 1) {
      for (size_t i = 0; i < laws.size(); ++i) reports[i] = run_law(*laws[i], corpus, budget);
    } else {
      std::atomic<size_t> next{0};
      auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < laws.size(); i = next.fetch_add(1))
          reports[i] = run_law(*laws[i], corpus, budget);
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    bool failed = false;
    for (size_t i = 0; i < laws.size(); ++i) {
      const auto& rep = reports[i];
      if (!rep.ok()) failed = true;
      if (format == "table") {
        out << std::left << std::setw(11) << rep.law_id << std::setw(18) << rep.status()
            << " checked=" << std::setw(8) << rep.main.instances_checked
            << " non_vacuous=" << std::setw(8) << rep.main.non_vacuous
            << " violations=" << rep.main.violations.size() << " (" << std::fixed
            << std::setprecision(1) << rep.runtime_ms << " ms)\n";
        for (const auto& v : rep.main.violations)
          out << "    " << v.instance << " -- " << v.detail << "\n";
      } else {
        out << to_json(rep, *laws[i], seed).dump() << "\n";
      }
    }
    return failed ? kExitViolation : kExitOk;
  } catch (const CapError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

inline int cmd_mine(const std::string& query_text, const std::string& family, long long budget,
                    int workers, const std::string& format, std::ostream& out,
                    std::ostream& err) {
  try {
    MineQuery query = parse_mine_query(query_text);
    std::vector<MineFamilyItem> items = mine_family(family);

    std::vector<MineItemResult> results(items.size());
    if (workers <= 1) {
      // stop early once the budget is exhausted in item order
      long long seen = 0;
      for (size_t i = 0; i < items.size() && seen < budget; ++i) {
        results[i] = mine_item(query, items[i]);
        seen += results[i].checked;
      }
    } else {
      std::atomic<size_t> next{0};
      auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1))
          results[i] = mine_item(query, items[i]);
      };
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }

    // deterministic merge in item order with the budget applied sequentially
    long long remaining = budget;
    for (size_t i = 0; i < items.size() && remaining > 0; ++i) {
      const long long take = std::min(results[i].checked, remaining);
      for (auto& w : results[i].witnesses) {
        if (w.position >= take) continue;
        if (format == "table") {
          out << w.family_item << "  N = ";
          std::string g = "[";
          for (size_t k = 0; k < w.sub.generators.size(); ++k)
            g += (k ? "," : "") + w.module->name(w.sub.generators[k]);
          out << g << "]\n";
        } else {
          json doc;
          doc["family_item"] = w.family_item;
          doc["target"] = w.target_name;
          doc["spec"] = w.spec_text;
          doc["report"] = to_json(w.report, w.module);
          out << doc.dump() << "\n";
        }
      }
      remaining -= take;
    }
    return kExitOk;
  } catch (const CapError& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

/// Argument-vector front end shared by the binary and the tests.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact classification of absorbing submodules over finite rings and integer "
               "lattices"};
  app.require_subcommand(1);

  std::string spec_path, target = "N", format = "json";
  auto* classify = app.add_subcommand("classify", "classify one named submodule");
  classify->add_option("--spec", spec_path, "instance document (file path or - for stdin)")
      ->required();
  classify->add_option("--target", target, "submodule name (default N)");
  classify->add_option("--format", format, "json or table");

  std::vector<std::string> law_ids;
  std::string corpus_name = "small-finite";
  std::uint64_t seed = 0;
  long long budget = 1'000'000'000;
  int workers = 1;
  auto* verify = app.add_subcommand("verify", "run encoded laws over a corpus");
  verify->add_option("laws", law_ids, "law ids (default: all)");
  verify->add_option("--corpus", corpus_name, "corpus name");
  verify->add_option("--seed", seed, "corpus seed");
  verify->add_option("--budget", budget, "instance budget per law");
  verify->add_option("--workers", workers, "parallel workers");
  verify->add_option("--format", format, "json or table");

  std::string query_text, family = "zn";
  auto* mine_cmd = app.add_subcommand("mine", "search corpora for flag patterns");
  mine_cmd->add_option("--query", query_text, "flag query, e.g. 2ap-primary=+,1ap=-")
      ->required();
  mine_cmd->add_option("--family", family, "instance family (zn | zn:N | zn:LO-HI | products | explicit)");
  mine_cmd->add_option("--budget", budget, "submodule budget");
  mine_cmd->add_option("--workers", workers, "parallel workers");
  mine_cmd->add_option("--format", format, "json or table");

  std::vector<const char*> argv;
  argv.push_back("modlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << "\n";
    return kExitUsage;
  }
  if (format != "json" && format != "table") {
    err << "unknown format: " << format << "\n";
    return kExitUsage;
  }

  if (classify->parsed()) return cmd_classify(spec_path, target, format, out, err);
  if (verify->parsed())
    return cmd_verify(law_ids, corpus_name, seed, budget, workers, format, out, err);
  if (mine_cmd->parsed()) return cmd_mine(query_text, family, budget, workers, format, out, err);
  err << "no subcommand\n";
  return kExitUsage;
}

}  // namespace modlab

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "modlab/cli.hpp"
#include "modlab/specfile.hpp"

using namespace modlab;

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string write_temp(const std::string& text) {
  static int counter = 0;
  std::string path = "/tmp/modlab_spec_" + std::to_string(::getpid()) + "_" +
                     std::to_string(counter++) + ".spec";
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("parse basic finite spec") {
  auto spec = parse_spec("ring zn 12\nmodule regular\nsub N = [4]\n");
  REQUIRE_FALSE(spec.integer_world());
  CHECK(spec.module->size() == 12);
  const Submodule* n = spec.find_sub("N");
  REQUIRE(n != nullptr);
  CHECK(n->size() == 3);
  // canonical text is stable under re-parsing
  CHECK(parse_spec(spec.canonical_text).canonical_text == spec.canonical_text);
}

TEST_CASE("parse integer world specs") {
  auto spec = parse_spec("ring Z\nmodule intlattice 2\nsub N = [(4,0)]\n");
  REQUIRE(spec.integer_world());
  CHECK(spec.int_ambient == 2);
  const IntLattice* n = spec.find_int_sub("N");
  REQUIRE(n != nullptr);
  CHECK(n->rank() == 1);

  auto reg = parse_spec("version 1\nring Z\nmodule regular\nsub N = [12]\n");
  REQUIRE(reg.integer_world());
  CHECK(reg.int_ambient == 1);
  REQUIRE(reg.find_int_sub("N") != nullptr);
}

TEST_CASE("parse errors carry the location") {
  try {
    parse_spec("ring zn -1\nmodule regular\n");
    FAIL("expected a spec error");
  } catch (const SpecError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 9);
  }
  try {
    parse_spec("ring zn 12\nmodule regular\nsub N = [4\n");
    FAIL("expected a spec error");
  } catch (const SpecError& e) {
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(parse_spec("ring zn 12\nmodule bogus\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("version 2\nring zn 12\nmodule regular\n"), SpecError);
  CHECK_THROWS_AS(parse_spec("ring zn 12\nmodule regular\nsub N = [4]\nsub N = [2]\n"),
                  SpecError);
  CHECK_THROWS_AS(parse_spec("ring Z\nmodule intlattice 9\n"), SpecError);
}

TEST_CASE("nested ring descriptors") {
  SECTION("quotient ring") {
    auto spec = parse_spec("ring quotient (zn 12) [4]\nmodule regular\nsub N = [2]\n");
    CHECK(spec.module->size() == 4);
    CHECK(spec.find_sub("N")->size() == 2);
  }
  SECTION("product ring with product module") {
    auto spec = parse_spec(
        "ring product (zn 2) (zn 3)\nmodule product (regular) (regular)\nsub N = [(1,0)]\n");
    CHECK(spec.module->size() == 6);
    CHECK(spec.find_sub("N")->size() == 2);
  }
  SECTION("idealization ring") {
    auto spec = parse_spec(
        "ring idealize (zn 2) (regular)\nmodule regular\nsub N = [(0,1)]\n");
    CHECK(spec.module->size() == 4);
    CHECK(spec.find_sub("N")->size() == 2);
  }
  SECTION("cyclic modules over a ring and over the integers") {
    auto klein = parse_spec("ring zn 2\nmodule cyclic 2 2\nsub L = [(1,0)]\n");
    CHECK(klein.module->size() == 4);
    CHECK_FALSE(klein.module->integer_base());
    auto z24 = parse_spec("ring Z\nmodule cyclic 2 4\nsub N = [(1,2)]\n");
    CHECK(z24.module->size() == 8);
    CHECK(z24.module->integer_base());
    CHECK(z24.find_sub("N")->size() == 2);
  }
  SECTION("quotient module") {
    auto spec = parse_spec("ring zn 12\nmodule quotient (regular) [4]\nsub N = [2]\n");
    CHECK(spec.module->size() == 4);
  }
}

TEST_CASE("cli classify") {
  SECTION("json output and byte-stable round trip") {
    std::string path = write_temp("ring zn 12\nmodule regular\nsub N = [4]\n");
    std::string out1;
    REQUIRE(run({"classify", "--spec", path, "--target", "N"}, &out1) == 0);
    auto doc = nlohmann::json::parse(out1);
    CHECK(doc["report"]["one_absorbing_primary"] == true);
    // feed the embedded reproducer back through the tool
    std::string path2 = write_temp(doc["spec"].get<std::string>());
    std::string out2;
    REQUIRE(run({"classify", "--spec", path2, "--target", "N"}, &out2) == 0);
    CHECK(out1 == out2);
  }
  SECTION("table output") {
    std::string path = write_temp("ring zn 12\nmodule regular\nsub N = [0]\n");
    std::string out;
    REQUIRE(run({"classify", "--spec", path, "--format", "table"}, &out) == 0);
    CHECK(out.find("one_absorbing_primary") != std::string::npos);
    CHECK(out.find("no") != std::string::npos);
  }
  SECTION("the whole module classifies proper=false") {
    std::string path = write_temp("ring zn 12\nmodule regular\nsub W = [1]\n");
    std::string out;
    REQUIRE(run({"classify", "--spec", path, "--target", "W"}, &out) == 0);
    auto doc = nlohmann::json::parse(out);
    CHECK(doc["report"]["proper"] == false);
    CHECK(doc["report"]["one_absorbing_primary"] == false);
  }
  SECTION("integer-base explicit module through the CLI") {
    std::string path = write_temp("ring Z\nmodule cyclic 2 2\nsub L = [(1,0)]\n");
    std::string out;
    REQUIRE(run({"classify", "--spec", path, "--target", "L"}, &out) == 0);
    auto doc = nlohmann::json::parse(out);
    // the colon ideal of a line in the Klein four group over Z is 2Z
    CHECK(doc["report"]["colon_ideal"]["ring"] == "Z");
    CHECK(doc["report"]["colon_ideal"]["generator"] == 2);
  }
  SECTION("exit codes") {
    std::string path = write_temp("ring zn 12\nmodule regular\nsub N = [4]\n");
    std::string err;
    CHECK(run({"classify", "--spec", path, "--target", "K"}, nullptr, &err) == 2);
    CHECK(err.find("unknown target") != std::string::npos);
    std::string bad = write_temp("ring zn -1\nmodule regular\n");
    CHECK(run({"classify", "--spec", bad}, nullptr, &err) == 2);
    std::string big = write_temp("ring zn 500\nmodule regular\nsub N = [2]\n");
    CHECK(run({"classify", "--spec", big}, nullptr, &err) == 3);
    CHECK(run({"classify", "--spec", "/nonexistent/x.spec"}, nullptr, &err) == 2);
  }
}

TEST_CASE("cli verify") {
  SECTION("single law json line") {
    std::string out;
    REQUIRE(run({"verify", "L-CHAIN", "--corpus", "zn-60"}, &out) == 0);
    auto doc = nlohmann::json::parse(out);
    CHECK(doc["law"] == "L-CHAIN");
    CHECK(doc["status"] == "pass");
    CHECK(doc["violations"].empty());
    CHECK(doc["non_vacuous_count"].get<long long>() > 0);
  }
  SECTION("verify all emits one report per catalog law and exits 0") {
    std::string out;
    REQUIRE(run({"verify", "all", "--corpus", "small-finite"}, &out) == 0);
    std::istringstream lines(out);
    std::string line;
    int count = 0;
    int violations = 0;
    while (std::getline(lines, line)) {
      auto doc = nlohmann::json::parse(line);
      violations += static_cast<int>(doc["violations"].size());
      ++count;
    }
    CHECK(count >= 17);
    CHECK(count == static_cast<int>(law_catalog().size()));
    CHECK(violations == 0);
  }
  SECTION("unknown law id exits 2") {
    std::string err;
    CHECK(run({"verify", "bogus-id"}, nullptr, &err) == 2);
  }
  SECTION("unknown corpus exits 2") {
    std::string err;
    CHECK(run({"verify", "L-CHAIN", "--corpus", "nope"}, nullptr, &err) == 2);
  }
}

TEST_CASE("cli mine") {
  SECTION("stream with reproducers") {
    std::string out;
    REQUIRE(run({"mine", "--query", "prime=+", "--family", "zn:12"}, &out) == 0);
    std::istringstream lines(out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
      auto doc = nlohmann::json::parse(line);
      CHECK(doc["report"]["prime"] == true);
      CHECK(doc["spec"].get<std::string>().find("zn 12") != std::string::npos);
      ++count;
    }
    CHECK(count == 2);
  }
  SECTION("empty stream exits 0") {
    std::string out;
    CHECK(run({"mine", "--query", "1ap=+,primary=-", "--family", "zn:2-30"}, &out) == 0);
    CHECK(out.empty());
  }
  SECTION("bad flag exits 2") {
    std::string err;
    CHECK(run({"mine", "--query", "shiny=+"}, nullptr, &err) == 2);
    CHECK(run({"mine", "--query", "prime=+", "--family", "venus"}, nullptr, &err) == 2);
  }
}

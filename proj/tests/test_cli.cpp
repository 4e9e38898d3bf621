#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "powerstab/cli.hpp"
#include "powerstab/errors.hpp"

using namespace powerstab;

namespace {

CommandResult run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  return run_command(args, in);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check-stable on an unstable ideal") {
    const auto r = run({"check-stable", "--ring", "ZZ[X]", "--gens", "X^2-2, X^3", "--max-power", "3"});
    CHECK(r.exit_code == kExitNegative);
    CHECK(r.output.find("UNSTABLE_AT(2)") != std::string::npos);
  }

  TEST_CASE("contract") {
    const auto r = run({"contract", "--ring", "QQ[Y][X]", "--gens", "Y, X^2+X+1", "--power", "3"});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output.find("(Y^3)") != std::string::npos);
  }

  TEST_CASE("kernel") {
    const auto r = run({"kernel", "--source", "QQ[Y,Z,W]", "--target", "QQ[T]", "--map", "W=T^3,Y=T^4,Z=T^5",
                        "--format", "json"});
    REQUIRE(r.exit_code == kExitOk);
    const auto doc = nlohmann::json::parse(r.output);
    std::vector<std::string> gens;
    for (const auto& g : doc["kernel"]) gens.push_back(g.get<std::string>());
    const auto ring = RingSpec::parse("QQ[Y,Z,W]");
    CHECK(ideal_equal(Ideal(ring, [&] {
                        std::vector<Polynomial> v;
                        for (const auto& s : gens) v.push_back(parse_poly(s, ring));
                        return v;
                      }()),
                      Ideal::parse("W^3 - Y*Z, Y^2 - W*Z, Z^2 - W^2*Y", ring)));
  }

  TEST_CASE("generator input") {
    const auto z = RingSpec::parse("ZZ[X]");
    CHECK(ideal_equal(load_ideal("X^2-2, X^3", z), Ideal::parse("X^2 - 2, X^3", z)));
    CHECK(load_ideal("# comment\n\nX^2-2\nX^3\n", z).generators().size() == 2);
    CHECK_THROWS_AS(load_ideal("", z), UsageError);
    CHECK_THROWS_AS(load_ideal("# only a comment\n", z), UsageError);
    try {
      load_ideal("X\nX^2 + *3", z);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    const std::string path = "ps_cli_test_gens.txt";
    {
      std::ofstream f(path);
      f << "W^3 - Y*Z\nY^2 - W*Z\nZ^2 - W^2*Y\n";
    }
    const auto r = RingSpec::parse("QQ[Y,Z,W]");
    CHECK(load_ideal_file(path, r).generators().size() == 3);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_ideal_file("/nonexistent/gens.txt", r), UsageError);
  }

  TEST_CASE("stdin generators") {
    const auto r = run({"member", "--ring", "ZZ[X]", "--gens", "-", "--poly", "8"}, "X^2-2\nX^3\n");
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output.find("true") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(run({"check-stable", "--ring", "QQ[Y][X]", "--gens", "X - Y", "--max-power", "3"}).exit_code == kExitOk);
    CHECK(run({"check-stable", "--ring", "ZZ[X]", "--gens", "X^2 - 2, X^3 +"}).exit_code == kExitUsage);
    CHECK(run({"check-stable", "--ring", "ZZ[X]", "--gens", "1/2"}).exit_code == kExitUsage);
    CHECK(run({"check-stable", "--ring", "Q[X]", "--gens", "X"}).exit_code == kExitUsage);
    CHECK(run({"frobnicate"}).exit_code == kExitUsage);
    CHECK(run({}).exit_code == kExitUsage);
    CHECK(run({"check-stable", "--ring", "ZZ[X]", "--gens", "X^2-2, X^3", "--max-power", "3", "--max-degree", "5"})
              .exit_code == kExitBudget);
    CHECK(run({"obstruct", "--ring", "QQ[Y,Z,W]", "--gens", "W^3-Y*Z, Y^2-W*Z, Z^2-W^2*Y"}).exit_code ==
          kExitNegative);
    CHECK(run({"certify", "--ring", "ZZ[X]", "--gens", "X^2-2, X^3"}).exit_code == kExitOk);
    CHECK(run({"criterion", "--ring", "ZZ[X]", "--gens", "X^2-2, X^3", "1"}).exit_code == kExitNegative);
    CHECK(run({"--help"}).exit_code == kExitOk);
  }

  TEST_CASE("gb over the integers") {
    const auto r = run({"gb", "--ring", "ZZ[X]", "--gens", "X^2-2, X^3"});
    CHECK(r.exit_code == kExitOk);
    CHECK(r.output.find('4') != std::string::npos);
    CHECK(r.output.find("2*X") != std::string::npos);
  }

  TEST_CASE("corpus verbs") {
    const auto list = run({"corpus", "--list"});
    CHECK(list.exit_code == kExitOk);
    CHECK(list.output.find("example_3_12") != std::string::npos);
    CHECK(run({"corpus", "example_3_12", "3", "--check"}).exit_code == kExitNegative);
    CHECK(run({"corpus", "nonexistent"}).exit_code == kExitUsage);
  }

  TEST_CASE("identical arguments give identical output") {
    const std::vector<std::string> args = {"corpus", "--all", "--seed", "5", "--max-power", "3", "--format", "json"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.output == b.output);
    auto par = args;
    par.push_back("--jobs");
    par.push_back("4");
    CHECK(run(par).output == a.output);
  }

  TEST_CASE("json output parses") {
    const auto r = run({"check-stable", "--ring", "QQ[Y][X]", "--gens", "Y^2, X^2+Y*X+1, Y^2*X", "--format", "json"});
    CHECK(r.exit_code == kExitOk);
    const auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["verdict"] == "STABLE_UP_TO(4)");
    CHECK(doc["certificate"] == "monic");
  }
}

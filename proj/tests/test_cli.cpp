#include "cantor_quant/cli.hpp"
#include "cantor_quant/error.hpp"
#include "cantor_quant/rational.hpp"

#include <doctest.h>
#include <json.hpp>

#include <regex>
#include <sstream>

using namespace cantor_quant;
using nlohmann::json;

namespace {

struct Outcome
{
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> const &args, std::optional<std::string> caps = std::nullopt)
{
  std::ostringstream out, err;
  int const code = cli::run(args, out, err, caps);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(std::string const &text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) { out.push_back(line); }
  return out;
}

} // namespace

TEST_CASE("error --n 3")
{
  auto const r = run_cli({"error", "--n", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "V_3 = 5/648 ≈ 0.00771604938272\n");
  CHECK(r.err.empty());
}

TEST_CASE("optimal --n 2")
{
  auto const r = run_cli({"optimal", "--n", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("Cell[1]  1/6 ≈ 0.166666666667") != std::string::npos);
  CHECK(r.out.find("Tail[1]  5/6 ≈ 0.833333333333") != std::string::npos);
  CHECK(r.out.find("distortion = 1/72") != std::string::npos);
}

TEST_CASE("verify --n 4")
{
  auto const r = run_cli({"verify", "--n", "4", "--epsilon", "1/16384"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("PASS", 0) == 0);
  CHECK(r.out.find("exact V_n          = 1/648") != std::string::npos);
  CHECK(r.out.find("<= bound") != std::string::npos);
}

TEST_CASE("verification failure exits with 1")
{
  auto const r = run_cli({"verify", "--n", "2", "--epsilon", "1"});
  CHECK(r.code == cli::kExitVerificationFailed);
  CHECK(r.out.rfind("FAIL", 0) == 0);
}

TEST_CASE("usage errors exit with 2")
{
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"error", "--bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({"error"}).code == cli::kExitUsage);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"error", "--n", "0"}).code == cli::kExitUsage);
  CHECK(run_cli({"error", "--n", "three"}).code == cli::kExitUsage);
  CHECK(run_cli({"error", "--n", "3", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(run_cli({"optimal", "--n", "5", "--subset", "0,x"}).code == cli::kExitUsage);
  CHECK(run_cli({"optimal", "--n", "5", "--subset", "0,1"}).code == cli::kExitUsage);
  CHECK(run_cli({"optimal", "--n", "6", "--subset", "1,1"}).code == cli::kExitUsage);
  CHECK(run_cli({"optimal", "--n", "5", "--subset", "9"}).code == cli::kExitUsage);
  CHECK(run_cli({"optimal", "--n", "5", "--subset", "0", "--all"}).code == cli::kExitUsage);
  CHECK(run_cli({"verify", "--n", "4", "--epsilon", "0.5"}).code == cli::kExitUsage);
  CHECK(run_cli({"verify", "--n", "4", "--epsilon", "0"}).code == cli::kExitUsage);
  auto const r = run_cli({"error", "--bogus"});
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("caps refuse loudly")
{
  auto const big = run_cli({"optimal", "--n", "48", "--all"});
  CHECK(big.code == cli::kExitUsage);
  CHECK(big.err.find("601080390") != std::string::npos);

  auto const deep = run_cli({"optimal", "--n", "16"}, std::string("3:100"));
  CHECK(deep.code == cli::kExitUsage);

  auto const raised = run_cli({"optimal", "--n", "6", "--all"}, std::string("20:6"));
  CHECK(raised.code == cli::kExitOk);
  auto const lowered = run_cli({"optimal", "--n", "6", "--all"}, std::string("20:5"));
  CHECK(lowered.code == cli::kExitUsage);

  CHECK(run_cli({"error", "--n", "3"}, std::string("bad")).code == cli::kExitUsage);
  CHECK(run_cli({"error", "--n", "3"}, std::string("0:5")).code == cli::kExitUsage);
  CHECK(run_cli({"error", "--n", "3"}, std::string("5:")).code == cli::kExitUsage);
}

TEST_CASE("parse_caps and parse_subset")
{
  auto const limits = cli::parse_caps("24:500000");
  CHECK(limits.max_level == 24);
  CHECK(limits.max_sets == 500000);
  CHECK_THROWS_AS(cli::parse_caps("24"), ParseError);
  CHECK_THROWS_AS(cli::parse_caps("-1:3"), ParseError);

  CHECK(cli::parse_subset("0,3,5") == std::vector<std::size_t>{0, 3, 5});
  CHECK(cli::parse_subset("").empty());
  CHECK_THROWS_AS(cli::parse_subset("1,"), ParseError);
  CHECK_THROWS_AS(cli::parse_subset(",1"), ParseError);
  CHECK_THROWS_AS(cli::parse_subset("1;2"), ParseError);
  CHECK_THROWS_AS(cli::parse_subset("-1"), ParseError);
}

TEST_CASE("error --upto table decreases strictly")
{
  auto const r = run_cli({"error", "--n", "300", "--upto", "--format", "csv"});
  REQUIRE(r.code == cli::kExitOk);
  auto const rows = lines(r.out);
  REQUIRE(rows.size() == 301);
  CHECK(rows[0] == "n,exact,decimal");
  std::optional<Rational> previous;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto const first = rows[i].find(',');
    auto const second = rows[i].find(',', first + 1);
    CHECK(rows[i].substr(0, first) == std::to_string(i));
    Rational const v = parse_rational(rows[i].substr(first + 1, second - first - 1));
    if (previous) { CHECK(v < *previous); }
    previous = v;
  }
}

TEST_CASE("json layout")
{
  auto const r = run_cli({"optimal", "--n", "5", "--subset", "1", "--format", "json"});
  REQUIRE(r.code == cli::kExitOk);
  auto const doc = json::parse(r.out);
  CHECK(doc["command"] == "optimal");
  CHECK(doc["inputs"]["n"] == 5);
  CHECK(doc["inputs"]["subset"] == json::array({1}));
  auto const &set = doc["results"]["sets"][0];
  CHECK(set["n"] == 5);
  CHECK(set["level"] == 2);
  CHECK(set["points"].size() == 5);
  CHECK(set["points"][1]["kind"] == "Cell");
  CHECK(set["points"][1]["word"] == "[1,2]");
  CHECK(set["points"][1]["position"]["exact"] == "13/54");
  CHECK(set["points"][1]["position"]["decimal"].get<double>() == doctest::Approx(13.0 / 54));
  CHECK(set["distortion"]["exact"] == "7/5832");
  CHECK(doc["results"]["count"] == "4");

  auto const m = json::parse(run_cli({"moments", "--format", "json"}).out);
  CHECK(m["results"]["mean"]["exact"] == "1/2");
  CHECK(m["results"]["variance"]["exact"] == "1/8");
  CHECK(m["results"]["second_raw_moment"]["exact"] == "3/8");

  auto const v = json::parse(run_cli({"verify", "--n", "3", "--format", "json"}).out);
  CHECK(v["command"] == "verify");
  CHECK(v["inputs"]["epsilon"] == "1/16384");
  CHECK(v["results"]["passed"] == true);
  CHECK(v["results"]["exact_error"]["exact"] == "5/648");
}

TEST_CASE("every serialized rational re-parses exactly")
{
  std::regex const fraction(R"re("exact": "(-?[0-9]+/[0-9]+)")re");
  for (auto const &args : std::vector<std::vector<std::string>>{
         {"optimal", "--n", "12", "--all", "--format", "json"},
         {"split", "--n", "4", "--format", "json"},
         {"export-plot", "--n", "9", "--format", "json"},
         {"measure", "--epsilon", "1/32", "--format", "json"}}) {
    auto const r = run_cli(args);
    REQUIRE(r.code == cli::kExitOk);
    int seen = 0;
    for (std::sregex_iterator it(r.out.begin(), r.out.end(), fraction), end; it != end; ++it) {
      std::string const text = (*it)[1];
      CHECK(to_fraction_string(parse_rational(text)) == text);
      ++seen;
    }
    CHECK(seen > 0);
  }
}

TEST_CASE("output is deterministic")
{
  for (auto const &args : std::vector<std::vector<std::string>>{{"optimal", "--n", "7", "--all"},
                                                                 {"split", "--n", "6", "--format", "json"},
                                                                 {"export-plot", "--n", "5"},
                                                                 {"error", "--n", "64", "--upto"}}) {
    CHECK(run_cli(args).out == run_cli(args).out);
  }
}

TEST_CASE("moments text")
{
  auto const r = run_cli({"moments"});
  CHECK(r.out == "E(X) = 1/2 ≈ 0.5\nV = 1/8 ≈ 0.125\nE(X^2) = 3/8 ≈ 0.375\n");
}

TEST_CASE("split")
{
  auto const r = run_cli({"split", "--n", "4"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("4 successor(s) with n = 5") != std::string::npos);
  auto const two = json::parse(run_cli({"split", "--n", "2", "--format", "json"}).out);
  REQUIRE(two["results"]["successors"].size() == 2);
  CHECK(two["results"]["successors"][0]["points"][0]["position"]["exact"] == "1/18");
  CHECK(two["results"]["successors"][1]["points"][1]["position"]["exact"] == "13/18");
  for (auto const &s : two["results"]["successors"]) { CHECK(s["distortion"]["exact"] == "5/648"); }
}

TEST_CASE("export-plot csv")
{
  auto const r = run_cli({"export-plot", "--n", "3", "--subset", "0"});
  REQUIRE(r.code == cli::kExitOk);
  auto const rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "record,index,position,position_decimal,kind,word,error,error_decimal");
  CHECK(rows[1] == "point,0,1/18,0.0555555555556,Cell,\"[1,1]\",1/2592,0.000385802469136");
  CHECK(rows[3] == "point,2,5/6,0.833333333333,Tail,\"[1]\",1/144,0.00694444444444");
  CHECK(rows[4] == "boundary,0,1/6,0.166666666667,,,,");
  CHECK(rows[5] == "boundary,1,5/9,0.555555555556,,,,");
}

TEST_CASE("measure csv")
{
  auto const r = run_cli({"measure", "--epsilon", "1/2"});
  REQUIRE(r.code == cli::kExitOk);
  auto const rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "position_decimal,position_rational,weight_rational");
  CHECK(rows[1] == "0.166666666667,1/6,1/2");
  CHECK(rows[2] == "0.833333333333,5/6,1/2");
}

TEST_CASE("n = 1")
{
  auto const r = run_cli({"optimal", "--n", "1"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("Cell[]  1/2") != std::string::npos);
  CHECK(run_cli({"error", "--n", "1"}).out == "V_1 = 1/8 ≈ 0.125\n");
}

TEST_CASE("help")
{
  auto const r = run_cli({"--help"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("verify") != std::string::npos);
}

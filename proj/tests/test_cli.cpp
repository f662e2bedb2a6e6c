#include "doctest.h"
#include "sato/cli.hpp"
#include "sato/expr.hpp"
#include "sato/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace sato;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) { return "cli_test_" + name + ".json"; }

}  // namespace

TEST_CASE("kdv residual of a constant is zero") {
  const Run r = run({"kdv", "residual", "--beta", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");
  CHECK(run({"kdv", "residual", "--beta", "x"}).out == "-2/3*x\n");
}

TEST_CASE("genus of orders 2 and 3") {
  const Run r = run({"genus", "--gens", "D^-2,D^-3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("genus 1\n") != std::string::npos);
  CHECK(r.out.find("gaps [1]\n") != std::string::npos);
  const Run ops = run({"genus", "--gens", "D^2, D^5", "--as", "operator"});
  CHECK(ops.out.find("genus 2\n") != std::string::npos);
  CHECK(ops.out.find("gaps [1, 3]\n") != std::string::npos);
}

TEST_CASE("non-commuting generators are refused") {
  const Run r = run({"schur", "extract", "--gens", "D^2,D^3+x"});
  CHECK(r.code != 0);
  CHECK(r.err.rfind("non-commuting:", 0) == 0);
  CHECK(r.out.empty());
}

TEST_CASE("error categories") {
  auto category = [](std::vector<std::string> a) {
    const Run r = run(std::move(a));
    CHECK(r.code != 0);
    return r.err.substr(0, r.err.find(':'));
  };
  CHECK(category({"sigma", "D^x"}) == "syntax-error");
  CHECK(category({"sigma", "D + w"}) == "unknown-symbol");
  CHECK(category({"invert", "x*D"}) == "non-unit-leading");
  CHECK(category({"root", "y^-2", "--n", "0"}) == "zero-N");
  CHECK(category({"elliptic", "--depth", "3"}) == "depth-too-small");
  CHECK(category({"cubic", "--delta", "x"}) == "wrong-shape");
  CHECK(category({"genus", "--gens", "y^-2, y^-4"}) == "wrong-shape");
  CHECK(category({"genus", "--gens", "y^-2, y^-5", "--bound", "5"}) == "unstable-bound");
  CHECK(category({"schur", "validate", "--pair", "no_such_file.json"}) == "invalid-argument");
  CHECK(category({"sigma", "D", "--ring", "{\"kind\":"}) == "syntax-error");
  CHECK(category({"sigma", "D", "--ring", "{\"kind\":\"matrices\"}"}) == "unsupported-ring");
  CHECK(category({"frobnicate"}) == "invalid-argument");
  CHECK(category({"mul", "D", "--as", "neither"}) == "invalid-argument");
  CHECK(category({}) == "invalid-argument");
}

TEST_CASE("operator and series commands") {
  CHECK(run({"mul", "D^2 + x*D", "D^-1", "--depth", "5"}).out == "D + x + O(D^-4)\n");
  CHECK(run({"commutator", "D", "x", "--depth", "3"}).out == "1 + O(D^-2)\n");
  CHECK(run({"sigma", "D^2 + x*D + 3"}).out == "y^-2 + 3 + O(y^14)\n");
  CHECK(run({"act", "D + x", "y^-2 + 1"}).out == "y^-3 + 3*y^-1 + O(y^13)\n");
  CHECK(run({"compose", "y + y^2", "y + y^3", "--depth", "6"}).out == "y + y^2 + y^3 + 2*y^4 + O(y^6)\n");
  CHECK(run({"revert", "y + y^2", "--depth", "5"}).out == "y - y^2 + 2*y^3 - 5*y^4 + O(y^5)\n");
  CHECK(run({"mul", "y^-2", "y + 1", "--as", "series", "--depth", "4"}).out == "y^-2 + y^-1 + O(y^2)\n");
  const Run c = run({"conjugate", "D^2 + x", "--depth", "6", "--xprec", "8"});
  CHECK(c.code == 0);
  CHECK(c.out.find("within precision") != std::string::npos);
  CHECK(run({"conjugate", "D^2", "--by", "1 + x", "--depth", "3"}).code == 0);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("custom coefficient rings") {
  const std::string jets = R"({"kind":"diff_polynomial","functions":["b"],"max_jet":4})";
  CHECK(run({"kdv", "residual", "--beta", "b", "--ring", jets}).out == "-2/3*b*b' + 1/6*b'''\n");
  const std::string poly = R"({"kind":"x_power_series","base":{"kind":"polynomial","vars":["t"]},"precision":6})";
  const Run r = run({"mul", "D + t", "D - t", "--ring", poly, "--depth", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "D^2 - t^2 + O(D^-1)\n");
  CHECK(run({"cubic", "--delta", "t", "--ring", poly}).out.rfind("tag: parametric", 0) == 0);
}

TEST_CASE("kdv system and cubic summaries") {
  const Run k = run({"kdv", "system"});
  CHECK(k.code == 0);
  CHECK(k.out.find("[P, L] = -1 * (displayed system)") != std::string::npos);
  CHECK(k.out.find("kdv_residual(-beta): yes") != std::string::npos);
  CHECK(run({"cubic", "--delta", "0"}).out.rfind("tag: cusp", 0) == 0);
  const Run n = run({"cubic", "--delta", "2"});
  CHECK(n.out.rfind("tag: node", 0) == 0);
  CHECK(n.out.find("discriminant: 0") != std::string::npos);
  const Run e = run({"elliptic", "--depth", "9"});
  CHECK(e.code == 0);
  CHECK(e.out.find("[FAILS]") == std::string::npos);
  CHECK(e.out.find("[holds] gen2^2 = gen1^3 + A*gen1 + B") != std::string::npos);
}

TEST_CASE("Schur pairs round trip through JSON files") {
  const std::string path = temp_path("pair");
  const std::vector<std::string> flags = {"--depth", "10", "--xprec", "12"};
  auto with = [&](std::vector<std::string> a) {
    a.insert(a.end(), flags.begin(), flags.end());
    return a;
  };
  const Run ex = run(with({"schur", "extract", "--gens", "D^2, D^3 + 2*D", "--json-out", path}));
  REQUIRE(ex.code == 0);
  CHECK(ex.out.find("index 0") != std::string::npos);

  const Run v = run(with({"schur", "validate", "--pair", path}));
  CHECK(v.out == "valid\n");
  const Run i = run(with({"schur", "index", "--pair", path}));
  CHECK(i.out == "index 0\nstrongly semistable: yes, N = 0\n");

  const std::string rebuilt = temp_path("rebuilt");
  const Run rb = run(with({"schur", "rebuild", "--pair", path, "--json-out", rebuilt}));
  REQUIRE(rb.code == 0);
  const Json ops = Json::parse(slurp(rebuilt));
  REQUIRE(ops.size() == 2);
  const Ring R = Ring::x_power_series(Ring::rationals(), 12);
  CHECK(equal_within_precision(operator_from_json(ops[0], R), parse_operator("D^2", R, 10)));
  CHECK(equal_within_precision(operator_from_json(ops[1], R), parse_operator("D^3 + 2*D", R, 10)));
  std::remove(path.c_str());
  std::remove(rebuilt.c_str());
}

TEST_CASE("identical invocations give byte-identical JSON") {
  const std::vector<std::vector<std::string>> cmds = {
      {"schur", "extract", "--gens", "D^2 + 1, D^3 + 3/2*D", "--depth", "8"},
      {"elliptic", "--depth", "8"},
      {"kdv", "system"},
      {"genus", "--gens", "y^-3, y^-4, y^-5"},
      {"invert", "D^2 + x*D + 1", "--depth", "6"},
  };
  for (const auto& cmd : cmds) {
    std::vector<std::string> a = cmd;
    a.insert(a.end(), {"--json-out", "-"});
    const Run first = run(a), second = run(a);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find('{') != std::string::npos);
  }
  const std::string p1 = temp_path("det1"), p2 = temp_path("det2");
  run({"elliptic", "--depth", "8", "--json-out", p1});
  run({"elliptic", "--depth", "8", "--json-out", p2});
  CHECK(slurp(p1) == slurp(p2));
  CHECK(!slurp(p1).empty());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("JSON encodings follow the documented shapes") {
  const Json j = Json::parse(run({"sigma", "D^2 + 1/2", "--depth", "3", "--json-out", "-"}).out.substr(
      run({"sigma", "D^2 + 1/2", "--depth", "3"}).out.size()));
  CHECK(j["var"] == "y");
  CHECK(j["low"] == -2);
  CHECK(j["guaranteed"] == 1);
  CHECK(j["coeffs"][2]["monomials"][0]["coeffs"] == "1/2");
  CHECK(j["ring"]["kind"] == "rationals");

  const Json op = Json::parse(run({"invert", "D + x", "--depth", "2", "--xprec", "4", "--json-out", "-"})
                                  .out.substr(run({"invert", "D + x", "--depth", "2", "--xprec", "4"}).out.size()));
  CHECK(op["top_order"] == -1);
  CHECK(op["terms"].size() == 2);
  CHECK(op["terms"][1]["coeffs"][1]["monomials"][0]["coeffs"] == "-1");
  CHECK(op["ring"]["kind"] == "x_power_series");
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vanishkit/cli.hpp"

using namespace vanishkit;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "vanishkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("convolve writes a csv grid") {
  const auto r = invoke({"convolve", "--spec", "ex_a", "--grid", "99,101,0.5"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "x,re,im");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"decay", "--spec", "ex_a", "--radii", "10,100", "--annulus-step", "0.01"}).code == 0);
  CHECK(invoke({"decay", "--spec", "ex_nu", "--radii", "50,100", "--f-center", "0.5", "--f-halfwidth", "0.5",
                "--annulus-step", "0.01", "--epsilon", "0.1"})
            .code == 2);
  CHECK(invoke({"coeffs", "--spec", "ex_nu", "--epsilon", "0.01", "--rmax", "200"}).code == 0);
  CHECK(invoke({"coeffs", "--spec", "ex_a", "--epsilon", "0.5"}).code == 2);
  CHECK(invoke({"mean", "--spec", "ex_a", "--nlist", "10", "--tolerance", "1e-30"}).code == 2);
  CHECK(invoke({"bessel"}).code == 0);
  CHECK(invoke({"prop51", "--spec", "constant_delta"}).code == 2);
  const auto forced = invoke({"prop51", "--spec", "constant_delta", "--override"});
  CHECK(forced.code == 2);
  CHECK(nlohmann::json::parse(forced.out).at("generated") == true);
  CHECK(invoke({"prop51", "--spec", "ex_a"}).code == 0);
  CHECK(invoke({"frobnicate"}).code == 1);
  CHECK(invoke({"decay", "--spec", "ex_a", "--bogus"}).code == 1);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("input errors carry locations") {
  const auto bad = invoke({"convolve", "--spec", "{\n  \"expr\": [1,\n}", "--grid", "0,1,0.5"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(bad.err.find("column") != std::string::npos);

  const auto key = invoke({"convolve", "--spec", R"({"expr": {"kind": "translate", "t": 1, "child": {"kind": "example", "name": "ex_a"}, "colour": 2}})",
                           "--grid", "0,1,0.5"});
  CHECK(key.code == 1);
  CHECK(key.err.find("colour") != std::string::npos);

  const auto ex = invoke({"convolve", "--spec", "ex_qq", "--grid", "0,1,0.5"});
  CHECK(ex.code == 1);
  CHECK(ex.err.find("ex_qq") != std::string::npos);
}

TEST_CASE("inline spec matches the named example") {
  const auto named = invoke({"convolve", "--spec", "ex_a", "--grid", "-3,3,0.25"});
  const auto inline_spec =
      invoke({"convolve", "--spec", R"({"expr": {"kind": "sum", "terms": [{"kind": "example", "name": "ex_a"}]}})",
              "--grid", "-3,3,0.25"});
  CHECK(named.code == 0);
  CHECK(named.out == inline_spec.out);
}

TEST_CASE("output is deterministic and json parses back") {
  const auto dir = std::filesystem::temp_directory_path() / "vanishkit_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  for (const auto& p : {a, b}) {
    const auto r = invoke({"decay", "--spec", "ex_a", "--radii", "10,100,200", "--annulus-step", "0.01", "--format",
                           "json", "--out", p.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
  }
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("verdict") == "vanishing-up-to-horizon");
  CHECK(j.at("entries").size() == 3);
  CHECK(j.at("entries")[0].at("sup").get<double>() == doctest::Approx(0.4));
  std::filesystem::remove_all(dir);
}

TEST_CASE("fourier and rlcheck") {
  const auto s = invoke({"fourier", "--mode", "series", "--grid", "0,1,0.5"});
  CHECK(s.code == 0);
  CHECK(s.out.rfind("k,value", 0) == 0);
  CHECK(invoke({"rlcheck", "--mode", "constant", "--grid", "-1,1,0.5"}).code == 0);
  CHECK(invoke({"rlcheck", "--mode", "series", "--truncation", "2", "--grid", "-1,1,0.5"}).code == 2);
}

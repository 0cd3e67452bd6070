#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Set BP_UPDATE_GOLDEN=1 to rewrite the files instead of comparing.
void check_golden(const std::string& file, const std::vector<std::string>& args, int code = 0) {
  const Result r = run(args);
  CHECK(r.code == code);
  const std::string path = std::string(GOLDEN_DIR) + "/" + file;
  if (std::getenv("BP_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << r.out;
    return;
  }
  const std::string want = read_file(path);
  REQUIRE_MESSAGE(!want.empty(), "missing golden file " << path);
  CHECK_MESSAGE(r.out == want, "output differs from " << path);
}

}  // namespace

TEST_CASE("golden files") {
  check_golden("brackets.json", {"brackets", "--grid", "1"});
  check_golden("brackets_k.csv", {"brackets", "--grid", "1", "--k", "-1/2", "--format", "csv"});
  check_golden("verify-brackets.json", {"verify-brackets", "--grid", "2"});
  check_golden("verify-jacobi.json", {"verify-jacobi", "--grid", "1", "--depth", "2"});
  check_golden("simples.json", {"simples", "--p", "5"});
  check_golden("simples.csv", {"simples", "--p", "5", "--format", "csv"});
  check_golden("character.json", {"character", "--p", "5", "--i", "2", "--j", "1", "--depth", "2", "--charge", "3"});
  check_golden("character_vacuum.csv", {"character", "--p", "5", "--format", "csv"});
  check_golden("null-vector.json", {"null-vector", "--p", "5"});
  check_golden("top-dims.json", {"top-dims", "--p", "5"});
  check_golden("spectral-flow.json", {"spectral-flow", "--p", "5", "--grid", "2", "--depth", "2"});
  check_golden("central-charge.json", {"central-charge", "--p", "7"});
  check_golden("verify.json", {"verify", "--profile", "quick"});
}

TEST_CASE("reports") {
  const Result simples = run({"simples", "--p", "5"});
  const json s = json::parse(simples.out);
  CHECK(s["verdict"] == "verified");
  CHECK(s["results"].size() == 6);
  CHECK(s["results"][0]["lambda"] == json::array({"0", "2", "-1/2"}));

  const json nv = json::parse(run({"null-vector", "--p", "5"}).out);
  CHECK(nv["results"]["in_maximal_submodule"] == true);
  CHECK(nv["results"]["monomial"] == "(G+_{-1})^3");

  const json cc = json::parse(run({"central-charge", "--p", "7"}).out);
  CHECK(cc["results"]["c"] == "-48/7");
  CHECK(cc["results"]["forms_equal"] == true);
  CHECK(json::parse(run({"central-charge", "--k", "-1/2"}).out)["results"]["c"] == "-8/5");

  const json ch = json::parse(run({"character", "--p", "3", "--depth", "4", "--charge", "4"}).out);
  int total = 0;
  for (const auto& b : ch["results"]["blocks"]) total += b["dim"].get<int>();
  CHECK(total == 1);
  CHECK(ch["results"]["fixpoint_iterations"] == 2);

  const Result csv = run({"simples", "--p", "3", "--format", "csv"});
  CHECK(csv.out.rfind("chi,i,j,lambda,p,xi\n", 0) == 0);
}

TEST_CASE("determinism") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify-brackets", "--grid", "1"}, {"top-dims", "--p", "5"}, {"character", "--p", "5"}}) {
    CHECK(run(args).out == run(args).out);
  }
  const Result timed = run({"central-charge", "--p", "5", "--timing"});
  CHECK(json::parse(timed.out).contains("timing"));
  CHECK_FALSE(json::parse(run({"central-charge", "--p", "5"}).out).contains("timing"));
}

TEST_CASE("usage errors exit 2") {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"frobnicate"},
      {"simples"},
      {"simples", "--p", "4"},
      {"simples", "--p", "x"},
      {"simples", "--p", "5", "--bogus"},
      {"brackets", "--k", "1/0"},
      {"brackets", "--k", "0.5"},
      {"central-charge"},
      {"central-charge", "--k", "-3"},
      {"central-charge", "--p", "5", "--k", "1"},
      {"character", "--p", "5", "--i", "1"},
      {"character", "--p", "5", "--i", "3", "--j", "3"},
      {"null-vector", "--p", "5", "--field", "J"},
      {"verify", "--profile", "medium"},
      {"verify", "--inject-fault", "nonsense"},
      {"simples", "--p", "5", "--format", "xml"},
  };
  for (const auto& args : bad) {
    const Result r = run(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.find("Usage") != std::string::npos);
  }
  const Result help = run({"--help"});
  CHECK(help.code == 0);
}

TEST_CASE("fault injection exits 1 and names the bracket check") {
  const Result r = run({"verify", "--inject-fault", "gpgm-central"});
  CHECK(r.code == 1);
  const json j = json::parse(r.out);
  CHECK(j["verdict"] == "mismatch");
  const auto& failing = j["results"]["failing"];
  CHECK(std::find(failing.begin(), failing.end(), json("brackets")) != failing.end());
  CHECK(run({"verify-brackets", "--inject-fault", "gpgm-central"}).code == 1);
}

TEST_CASE("inconclusive exits 3") {
  const Result r = run({"top-dims", "--p", "5", "--charge", "2"});
  CHECK(r.code == 3);
  CHECK(json::parse(r.out)["verdict"] == "inconclusive");
}

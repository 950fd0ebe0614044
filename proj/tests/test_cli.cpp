#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stirval/cli.hpp"

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = stirval::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("stirling command") {
  CHECK(run({"stirling", "9", "6"}).out == "4536\n");
  CHECK(run({"stirling", "3", "2"}).out == "3\n");
  CHECK(run({"stirling", "2", "1", "--shift", "2"}).out == "5\n");
  const auto j = run({"stirling", "9", "6", "--format", "json"});
  CHECK(j.status == 0);
  CHECK(j.out == "{\"n\":9,\"k\":6,\"m\":0,\"value\":\"4536\"}\n");
  CHECK(run({"stirling", "2", "3", "--shift", "2"}).status == 1);
  CHECK(run({"stirling", "6000", "1"}).status == 1);
}

TEST_CASE("val command") {
  auto r = run({"val", "--p", "3", "--a", "1", "--n", "2", "--t", "6", "--method", "both"});
  CHECK(r.status == 0);
  CHECK(r.out == "formula=4 exact=4 match=true\n");
  r = run({"val", "--p", "3", "--a", "2", "--n", "1", "--t", "3", "--method", "formula"});
  CHECK(r.out == "2\n");
  r = run({"val", "--p", "3", "--a", "1", "--n", "2", "--t", "9", "--method", "formula"});
  CHECK(r.out == "0\n");
  r = run({"val", "--p", "5", "--a", "1", "--n", "1", "--t", "3", "--method", "both", "--format", "json"});
  CHECK(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["formula"] == "1");
  CHECK(doc["exact"] == "1");
  CHECK(doc["source"] == "conjecture");
}

TEST_CASE("val without a closed form suggests the exact method") {
  // t = a p^n - 1 has no conjecture decomposition for p = 5.
  auto r = run({"val", "--p", "5", "--a", "1", "--n", "1", "--t", "4", "--method", "formula"});
  CHECK(r.status == 1);
  CHECK(r.err.find("--method exact") != std::string::npos);
  r = run({"val", "--p", "5", "--a", "1", "--n", "1", "--t", "4", "--method", "exact"});
  CHECK(r.status == 0);
  CHECK(r.out == "1\n");  // s(5,4) = 10
}

TEST_CASE("val mismatch on the open conjecture exits 3") {
  const auto r = run({"val", "--p", "2", "--a", "1", "--n", "2", "--t", "2", "--method", "both"});
  CHECK(r.status == 3);
  CHECK(r.out == "formula=1 exact=0 match=false\n");
}

TEST_CASE("table command") {
  auto r = run({"table", "--a", "1", "--n", "1"});
  CHECK(r.status == 0);
  CHECK(r.out ==
        "a,n,t,m,k,epsilon_k,v3_formula,v3_exact,match\n"
        "1,1,1,1,2,0,0,0,true\n"
        "1,1,2,,,,1,1,true\n"
        "1,1,3,,,,0,0,true\n");
  r = run({"table", "--a", "1", "--n", "2"});
  CHECK(count_lines(r.out) == 10);
  CHECK(r.out.find("1,2,6,2,3,1,4,4,true\n") != std::string::npos);
  r = run({"table", "--a", "2", "--n", "1"});
  CHECK(count_lines(r.out) == 7);
  CHECK(r.out.find("false") == std::string::npos);
}

TEST_CASE("table writes a file") {
  const auto path = std::filesystem::temp_directory_path() / "stirval_table_test.csv";
  std::filesystem::remove(path);
  const auto r = run({"table", "--a", "1", "--n", "2", "--output", path.string()});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  CHECK(header == "a,n,t,m,k,epsilon_k,v3_formula,v3_exact,match");
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
  CHECK(run({"table", "--a", "1", "--n", "1", "--output", "/nonexistent-dir/x.csv"}).status == 1);
}

TEST_CASE("harmonic command") {
  auto r = run({"harmonic", "3", "1", "--p", "3"});
  CHECK(r.out == "H(3,1) = 11/6\nv_3 = -1\n");
  r = run({"harmonic", "27", "1", "--p", "3", "--format", "json"});
  CHECK(nlohmann::json::parse(r.out)["valuation"] == "-3");
  r = run({"harmonic", "5", "0", "--p", "3", "--check"});
  CHECK(r.status == 0);
  CHECK(r.out.find("H(5,0) = 1\nv_3 = 0\n") == 0);
  CHECK(r.out.find("holds") != std::string::npos);
  CHECK(run({"harmonic", "3", "4"}).status == 1);
  CHECK(run({"harmonic", "3", "1", "--p", "4"}).status == 1);
}

TEST_CASE("verify command exit statuses") {
  CHECK(run({"verify", "thm1", "--a", "1", "--n", "3"}).status == 0);
  CHECK(run({"verify", "identity11", "--n-max", "10"}).status == 0);
  auto r = run({"verify", "conjecture13", "--p", "5", "--a", "1", "--n-max", "1"});
  CHECK(r.status == 0);
  CHECK(r.out.find("deviations=0") != std::string::npos);
  r = run({"verify", "conjecture13", "--p", "2", "--a", "1", "--n-max", "2"});
  CHECK(r.status == 3);
  CHECK(r.out.find("CONJECTURE-DEVIATION") != std::string::npos);
  r = run({"verify", "bogus"});
  CHECK(r.status == 1);
  CHECK(r.err.find("valid:") != std::string::npos);
}

TEST_CASE("verify JSON output round-trips") {
  const auto r = run({"verify", "thm2", "--a", "1", "--n", "2", "--format", "json"});
  CHECK(r.status == 0);
  const auto doc = nlohmann::ordered_json::parse(r.out);
  CHECK(doc.dump(2) + "\n" == r.out);
  CHECK(doc["total"] == 9);
  std::vector<std::string> keys;
  for (const auto& [key, value] : doc.items()) keys.push_back(key);
  CHECK(keys == std::vector<std::string>{"suite", "total", "passed", "failed", "deviations", "records"});
}

TEST_CASE("verify CSV and --all") {
  auto r = run({"verify", "thm1", "--a", "1", "--n", "1", "--format", "csv"});
  CHECK(r.out.rfind("check_id,params,expected,actual,pass\n", 0) == 0);
  r = run({"verify", "thm1", "--a", "1", "--n", "2", "--all"});
  CHECK(count_lines(r.out) == 8);
}

TEST_CASE("bench command") {
  auto r = run({"bench", "--a", "1", "--n", "1"});
  CHECK(r.status == 0);
  CHECK(r.out.find("speedup") != std::string::npos);
  r = run({"bench", "--a", "2", "--n", "5", "--format", "json", "--repetitions", "1"});
  CHECK(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["exact_ns_per_query"].get<double>() > 0);
  CHECK(doc["formula_ns_per_query"].get<double>() > 0);
  CHECK(doc["mismatches"] == 0);
  CHECK(run({"bench", "--a", "2", "--n", "8"}).status == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == 1);
  CHECK(run({"val", "--a", "1"}).status == 1);
  CHECK(run({"stirling", "3", "2", "--format", "xml"}).status == 1);
  CHECK(run({"--help"}).status == 0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lensclass::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

long count_lines(const std::string& s, const std::string& needle) {
  std::istringstream in(s);
  long n = 0;
  for (std::string line; std::getline(in, line);) n += line.find(needle) != std::string::npos;
  return n;
}

}  // namespace

TEST_CASE("adjacency") {
  const auto brute = run({"adjacency", "--r", "4", "--weights", "2,1", "--method", "brute"});
  REQUIRE(brute.code == 0);
  const auto b = json::parse(brute.out);
  CHECK(b["schema"] == "lensclass/1");
  CHECK(b["matrix"] == json::parse("[[1,2],[0,1]]"));
  CHECK(b["s_sets"] == json::parse("[[0],[0]]"));
  CHECK_FALSE(b.contains("modr_mask"));

  const auto formula = run({"adjacency", "--r", "4", "--weights", "2,1", "--method", "formula"});
  REQUIRE(formula.code == 0);
  const auto f = json::parse(formula.out);
  CHECK(f["matrix"] == b["matrix"]);
  CHECK(f.contains("modr_mask"));

  const auto dim7 = json::parse(run({"adjacency", "--r", "4", "--weights", "2,1,1,1", "--method", "formula"}).out);
  CHECK(dim7["modr_mask"] == json::parse("[[0,3]]"));

  const auto bad = run({"adjacency", "--r", "4", "--weights", "0,1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("positive") != std::string::npos);
  CHECK(bad.out.empty());

  CHECK(run({"adjacency", "--r", "4"}).code == 2);
  CHECK(run({"adjacency", "--r", "4", "--weights", "2,1", "--method", "guess"}).code == 2);
  CHECK(run({"adjacency", "--r", "12", "--weights", "2,3,1", "--method", "formula"}).code == 2);

  const auto dot = run({"adjacency", "--r", "4", "--weights", "2,1", "--format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
  const auto csv = run({"adjacency", "--r", "4", "--weights", "2,1", "--format", "csv"});
  CHECK(csv.out == "1,2\n0,1\n");
}

TEST_CASE("isomorphic") {
  const auto same = run({"isomorphic", "--r", "6", "--weights", "1,1,1,3", "--weights2", "1,1,1,3"});
  CHECK(same.code == 0);
  const auto s = json::parse(same.out);
  CHECK(s["invariant"] == true);
  CHECK(s["search"] == "found");
  CHECK(s["witness"].is_object());

  const auto differ = run({"isomorphic", "--r", "6", "--weights", "1,1,1,3", "--weights2", "1,5,5,3"});
  CHECK(differ.code == 1);
  const auto d = json::parse(differ.out);
  CHECK(d["invariant"] == false);
  CHECK(d["search"] == "exhausted");
  CHECK(d["witness"].is_null());

  const auto pattern = run({"isomorphic", "--r", "4", "--weights", "2,1,1,1", "--weights2", "1,2,1,1"});
  CHECK(pattern.code == 2);
  CHECK(json::parse(pattern.out)["invariant"] == false);
  CHECK(pattern.err.find("gcd patterns differ") != std::string::npos);

  const auto found = run({"isomorphic", "--r", "8", "--weights", "1,1,1,2", "--weights2", "1,5,1,2"});
  CHECK(found.code == 0);
  const auto w = json::parse(found.out);
  CHECK(w["search"] == "found");
  CHECK(w["witness"]["moves"].is_array());

  const auto skipped = run({"isomorphic", "--r", "6", "--weights", "1,1,1,3", "--weights2", "1,1,1,3", "--budget", "0"});
  CHECK(skipped.code == 0);
  CHECK(json::parse(skipped.out)["search"] == "skipped");

  // no invariant is known in dimension 9: the search decides, or the answer is inconclusive
  const auto nine = run({"isomorphic", "--r", "3", "--weights", "1,1,1,1,1", "--weights2", "1,1,1,1,4"});
  CHECK(nine.code == 0);
  CHECK(json::parse(nine.out)["invariant"].is_null());
  const auto open = run({"isomorphic", "--r", "3", "--weights", "1,1,1,1,1", "--weights2", "1,1,2,1,1", "--budget", "0"});
  CHECK(open.code == 3);
  CHECK(json::parse(open.out)["search"] == "skipped");

  CHECK(run({"isomorphic", "--r", "6", "--weights", "1,1,1,3"}).code == 2);
  CHECK(run({"isomorphic", "--r", "6", "--weights", "1,1,3", "--weights2", "1,1,1,3"}).code == 2);
}

TEST_CASE("verify") {
  const auto small = run({"verify", "--max-r", "3"});
  CHECK(small.code == 0);
  CHECK(small.out.find("coprime,3,7,0,1,1,pass") != std::string::npos);
  CHECK(count_lines(small.out, ",fail") == 0);

  const auto gated = run({"verify", "--max-r", "8", "--budget", "0"});
  CHECK(gated.code == 0);
  CHECK(count_lines(gated.out, "search,") == count_lines(gated.out, ",skipped"));
  CHECK(count_lines(gated.out, "formula,") > 0);
  CHECK(count_lines(gated.out, ",fail") == 0);

  const auto full = run({"verify", "--max-r", "8"});
  CHECK(full.code == 0);
  CHECK(count_lines(full.out, ",fail") == 0);
  CHECK(count_lines(full.out, ",skipped") == 0);
  CHECK(full.out.rfind("check,r,dim,ell,K,cases,status\n", 0) == 0);

  // byte-identical regardless of worker count
  setenv("LENSCLASS_THREADS", "1", 1);
  CHECK(lensclass::cli::worker_count() == 1);
  const auto serial = run({"verify", "--max-r", "6"});
  setenv("LENSCLASS_THREADS", "4", 1);
  const auto parallel = run({"verify", "--max-r", "6"});
  unsetenv("LENSCLASS_THREADS");
  CHECK(serial.out == parallel.out);
  CHECK(run({"verify", "--max-r", "6"}).out == serial.out);

  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--max-r", "1"}).code == 2);
}

TEST_CASE("classes") {
  const auto csv = run({"classes", "--r", "12", "--dim", "7", "--ell", "3", "--K", "4"});
  CHECK(csv.code == 0);
  CHECK(count_lines(csv.out, "\"") == 8);
  const auto j = json::parse(run({"classes", "--r", "9", "--dim", "7", "--format", "json"}).out);
  CHECK(j["classes"].size() == 2);
  CHECK(j["table_count"] == 2);
  CHECK(run({"classes", "--r", "12", "--dim", "7", "--ell", "1", "--K", "5"}).code == 2);
  CHECK(run({"classes", "--r", "12", "--dim", "9"}).code == 2);
}

TEST_CASE("no subcommand") { CHECK(run({}).code == 2); }

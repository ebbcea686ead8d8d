#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "subeuclid/json_io.hpp"

using namespace subeuclid;

namespace {

#ifndef SEF_BINARY
#define SEF_BINARY "sef"
#endif

struct RunResult {
  int exit_code;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SEF_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status)};
}

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/sef_test_") + name;
}

}  // namespace

TEST_CASE("gen then solve pipeline") {
  const std::string points = tmp_path("p.json");
  CHECK(run("gen --n 100 --d 2 --seed 7 --out " + points).exit_code == 0);
  CHECK(run("solve --functional mst --in " + points).exit_code == 0);
  CHECK(run("solve --functional mm --in " + points).exit_code == 0);

  const std::string out = tmp_path("mst.json");
  CHECK(run("solve --functional mst --in " + points + " --out " + out).exit_code == 0);
  const std::string body = read_file(out);
  CHECK(body.find("\"length\"") != std::string::npos);
  CHECK(body.find("\"edges\"") != std::string::npos);
  CHECK(body.find("\"exact\": true") != std::string::npos);
}

TEST_CASE("oracle subcommand") {
  const std::string points = tmp_path("p10.json");
  CHECK(run("gen --n 10 --d 2 --seed 3 --out " + points).exit_code == 0);
  CHECK(run("oracle --functional tsp --in " + points).exit_code == 0);
  CHECK(run("oracle --functional mm --in " + points).exit_code == 0);
}

TEST_CASE("hk and hk-check round trip") {
  const std::string points = tmp_path("p12.json");
  const std::string frac = tmp_path("frac.json");
  CHECK(run("gen --n 12 --d 2 --seed 11 --out " + points).exit_code == 0);
  CHECK(run("hk --in " + points + " --out " + frac).exit_code == 0);
  CHECK(read_file(frac).find("\"value\"") != std::string::npos);
  CHECK(run("hk-check --in " + frac).exit_code == 0);

  // Two disjoint cycles: infeasible, exit 2.
  FractionalSolution split;
  split.n = 8;
  for (int i = 0; i < 4; ++i) split.set(make_edge(i, (i + 1) % 4), 1.0);
  for (int i = 0; i < 4; ++i) split.set(make_edge(4 + i, 4 + (i + 1) % 4), 1.0);
  const std::string split_path = tmp_path("split.json");
  write_file(split_path, fractional_to_json(split));
  CHECK(run("hk-check --in " + split_path).exit_code == 2);
}

TEST_CASE("separate runs are byte identical") {
  const std::string out1 = tmp_path("sep1.json");
  const std::string out2 = tmp_path("sep2.json");
  CHECK(run("separate --d 2 --n 8 --trials 5 --seed 1 --out " + out1).exit_code == 0);
  CHECK(run("separate --d 2 --n 8 --trials 5 --seed 1 --jobs 2 --out " + out2).exit_code == 0);
  CHECK(read_file(out1) == read_file(out2));
}

TEST_CASE("beta and alpha and bnb emit their formats") {
  const std::string est = tmp_path("est.json");
  CHECK(run("beta --functional mst --d 2 --n 100 --trials 5 --seed 2 --out " + est)
            .exit_code == 0);
  CHECK(read_file(est).find("\"mean\"") != std::string::npos);

  const std::string alpha = tmp_path("alpha.csv");
  CHECK(run("alpha --d 2 --n 200 --trials 5 --seed 2 --out " + alpha).exit_code == 0);
  CHECK(read_file(alpha).rfind("k,fraction", 0) == 0);

  const std::string points = tmp_path("pb.json");
  const std::string stats = tmp_path("stats.json");
  CHECK(run("gen --n 12 --d 2 --seed 5 --out " + points).exit_code == 0);
  CHECK(run("bnb --in " + points + " --bound tf --out " + stats).exit_code == 0);
  CHECK(read_file(stats).find("\"nodesExpanded\"") != std::string::npos);

  const std::string growth = tmp_path("growth.csv");
  CHECK(run("bnb-growth --n 10,12 --trials 2 --bound tf --seed 4 --out " + growth)
            .exit_code == 0);
  CHECK(read_file(growth).rfind("n,trial,nodes,leaves,pruned,optimal,wallTime", 0) == 0);
}

TEST_CASE("invalid usage exits 1") {
  CHECK(run("solve --functional bogus --in /nonexistent.json").exit_code == 1);
  CHECK(run("definitely-not-a-command").exit_code != 0);
}

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status;
  std::string out;
};

Run cactool(const std::string& args) {
  const std::string cmd = std::string(CACTOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::vector<nlohmann::json> records(const std::string& out) {
  std::vector<nlohmann::json> r;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) r.push_back(nlohmann::json::parse(line));
  return r;
}

std::string fixture(const char* name) { return std::string(CACTUS_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("cli: algebra validate") {
  const auto r = cactool("--emit json algebra validate " + fixture("kx3.json"));
  CHECK(r.status == 0);
  const auto rec = records(r.out);
  REQUIRE(rec.size() == 1);
  CHECK(rec[0]["status"] == "ok");
  CHECK(rec[0]["dim"] == 3);
  CHECK(cactool("algebra validate /nonexistent.json").status == 2);
}

TEST_CASE("cli: corrupted structure constants are rejected with a witness") {
  const auto path = std::filesystem::temp_directory_path() / "cactool_corrupt.json";
  std::ofstream(path) << R"({"field": "Q", "basis": ["1", "x", "y"], "unit": [1, 0, 0],
    "mul": [[0,0,0,1],[0,1,1,1],[1,0,1,1],[0,2,2,1],[2,0,2,1],[1,1,2,1],[1,2,1,1],[2,1,1,1],[2,2,1,1]],
    "aug": [0, 0, 1]})";
  const auto r = cactool("--emit json algebra validate " + path.string());
  std::filesystem::remove(path);
  CHECK(r.status == 2);
  const auto rec = records(r.out);
  REQUIRE(rec.size() == 1);
  CHECK(rec[0]["error"] == "NotAssociative");
  CHECK(rec[0]["message"].get<std::string>().find("(") != std::string::npos);
}

TEST_CASE("cli: cactus validate reports interleaved lobes") {
  const auto ok = cactool("--emit json cactus validate '[1,2,1,3]'");
  CHECK(ok.status == 0);
  CHECK(records(ok.out)[0]["lobes"] == 3);
  const auto bad = cactool("--emit json cactus validate '[1,2,1,2]'");
  CHECK(bad.status == 2);
  const auto rec = records(bad.out);
  REQUIRE(rec.size() == 1);
  CHECK(rec[0]["error"] == "InterleavedLobes");
}

TEST_CASE("cli: compose and decompose") {
  const auto r = cactool("--emit json cactus compose '[1,2]' 1 '[1,2]'");
  CHECK(r.status == 0);
  CHECK(records(r.out)[0]["result"]["word"] == nlohmann::json::array({1, 2, 3}));
  const auto d = cactool("--emit json cactus decompose '[1,2,1,3]'");
  CHECK(d.status == 0);
  CHECK(records(d.out).size() == 3);
}

TEST_CASE("cli: realize") {
  const auto r = cactool(R"(--emit json cactus realize '{"word":[1],"lengths":["1"]}' --points '[["1/2","1/2"]]')");
  CHECK(r.status == 0);
  CHECK(records(r.out)[0]["point"] == nlohmann::json::array({"0", "1/2", "1/2"}));
  CHECK(cactool(R"(cactus realize '[1]' --points '[["1/2","1/3"]]')").status == 2);
}

TEST_CASE("cli: hh dimensions") {
  const auto r = cactool("--emit json hh --algebra " + fixture("kx2.json") + " --max-degree 4");
  CHECK(r.status == 0);
  std::vector<int> dims;
  for (const auto& rec : records(r.out)) dims.push_back(rec["dim"].get<int>());
  CHECK(dims == std::vector<int>{2, 1, 1, 1, 1});
  const auto f = cactool("--emit json --field p:2 hh --algebra " + fixture("kz2.json") + " --max-degree 2");
  CHECK(f.status == 0);
}

TEST_CASE("cli: product table, bv-check and diagram-check") {
  CHECK(cactool("product-table --algebra " + fixture("kx2.json") + " --max-degree 2").status == 0);
  CHECK(cactool("bv-check --algebra " + fixture("kz2.json") + " --max-degree 3").status == 0);
  CHECK(cactool("--seed 3 bv-check --algebra " + fixture("kx2.json") + " --max-degree 2").status == 0);
  const auto d = cactool("--emit json diagram-check --algebra " + fixture("kz2.json") + " --lobes 2 --max-points 4");
  CHECK(d.status == 0);
  for (const auto& rec : records(d.out)) CHECK(rec["failed"] == 0);
}

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "divseq/errors.hpp"
#include "divseq/job.hpp"
#include "support.hpp"

using namespace divseq;
namespace fs = std::filesystem;

namespace {

const char* kShowcaseJob =
    "# torus example\n"
    "group  = \"gm\"\n"
    "coords = [\"t\", \"1 - t\"]\n"
    "nmax   = 40\n";

int parse_error_column(const std::string& text, int* line = nullptr) {
  try {
    JobSpec spec = parse_job(text);
    run_job(spec);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.column();
  }
  return -1;
}

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("divseq_test_job_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const fs::path& dir, const std::string& job, const std::string& extra = "") {
  {
    std::ofstream out(dir / "job.txt");
    out << job;
  }
  std::string cmd = std::string("\"") + DIVSEQ_CLI_PATH + "\" --job \"" + (dir / "job.txt").string() + "\" --out \"" +
                    (dir / "out").string() + "\" " + extra + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("job files parse into specs") {
  JobSpec spec = parse_job(kShowcaseJob);
  CHECK(spec.group == JobGroup::kGm);
  REQUIRE(spec.coords.size() == 2);
  CHECK(spec.coords[1].text == "1 - t");
  CHECK(spec.coords[1].line == 3);
  CHECK(spec.coords[1].column == 17);
  CHECK(spec.nmax == 40);
  CHECK(spec.seed == kDefaultSeed);

  JobSpec is = parse_job("group = intseq\na = 2\nb = 3\nnmax = 12\nthreads = 2\nformat = json\n");
  CHECK(is.group == JobGroup::kIntseq);
  CHECK(is.a == 2);
  CHECK(is.threads == 2);
  CHECK(is.format == "json");
}

TEST_CASE("job parse errors carry positions") {
  int line = 0;
  CHECK(parse_error_column("group = \"gm\"\ncoords = [\"t\", \"t + * 3\"]\n", &line) == 21);
  CHECK(line == 2);
  CHECK(parse_error_column("group = \"gm\"\nnmax = 5\nnmax = 6\n", &line) == 1);
  CHECK(line == 3);
  CHECK(parse_error_column("group = \"gm\"\ncolor = 5\n", &line) == 1);
  CHECK(line == 2);
  CHECK(parse_error_column("group = \"gm\"\njust words\n", &line) > 0);
  CHECK(parse_error_column("group = \"gm\"\ncoords = [\"t\", \n") > 0);
  CHECK(parse_error_column("group = \"tori\"\n") > 0);
  CHECK_THROWS_AS(parse_job("coords = [\"t\"]\n"), ParseError);
  CHECK_THROWS_AS(run_job(parse_job("group = \"ec\"\npoint = [\"t\", \"t\"]\n")), ParseError);
}

TEST_CASE("runs are deterministic and printed polynomials re-parse") {
  JobSpec spec = parse_job(kShowcaseJob);
  JobOutput a = run_job(spec);
  spec.threads = 4;
  JobOutput b = run_job(spec);
  CHECK(a.report.dump() == b.report.dump());
  REQUIRE(a.csv.has_value());
  CHECK(*a.csv == *b.csv);
  CHECK(a.csv->rfind("n,degree,support_size,equals_D1\n", 0) == 0);

  for (const auto& entry : a.report["sequence"]) {
    for (const auto& place : entry["places"]) {
      const std::string text = place["poly"].get<std::string>();
      CHECK(to_string(testsupport::P(text)) == text);
    }
  }
  const auto& table = a.report["report"]["support_table"];
  REQUIRE(table.size() == 1);
}

TEST_CASE("cli exit codes and error files") {
  fs::path ok = scratch_dir("ok");
  CHECK(run_cli(ok, kShowcaseJob) == 0);
  CHECK(fs::exists(ok / "out" / "report.json"));
  CHECK(fs::exists(ok / "out" / "series.csv"));
  Json report = Json::parse(slurp(ok / "out" / "report.json"));
  CHECK(report["group"] == "gm");

  fs::path csv_only = scratch_dir("csv");
  CHECK(run_cli(csv_only, kShowcaseJob, "--format csv --nmax 12") == 0);
  CHECK_FALSE(fs::exists(csv_only / "out" / "report.json"));
  const std::string csv = slurp(csv_only / "out" / "series.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);

  fs::path parse = scratch_dir("parse");
  CHECK(run_cli(parse, "group = \"gm\"\ncoords = [\"t\", \"t + * 3\"]\n") == 2);
  Json perr = Json::parse(slurp(parse / "out" / "error.json"));
  CHECK(perr["error"] == "parse_error");
  CHECK(perr["line"] == 2);
  CHECK(perr["column"] == 21);

  fs::path singular = scratch_dir("singular");
  CHECK(run_cli(singular, "group = \"ec\"\na_invariants = [\"0\", \"0\", \"0\", \"0\", \"0\"]\npoint = [\"t\", \"t\"]\n") ==
        3);
  Json herr = Json::parse(slurp(singular / "out" / "error.json"));
  CHECK(herr["error"] == "hypothesis_violation");
  CHECK(herr["kind"] == "singular_curve");

  fs::path torsion = scratch_dir("torsion");
  CHECK(run_cli(torsion, "group = \"gm\"\ncoords = [\"-1\", \"1\"]\n") == 3);

  fs::path other = scratch_dir("other");
  CHECK(run_cli(other, "group = \"intseq\"\na = 3\nb = 3\n") == 1);

  fs::path seeded = scratch_dir("seeded");
  CHECK(run_cli(seeded, kShowcaseJob, "--seed 7 --threads 3") == 0);
  Json with_seed = Json::parse(slurp(seeded / "out" / "report.json"));
  CHECK(with_seed["seed"] == 7);
  with_seed.erase("seed");
  report.erase("seed");
  CHECK(with_seed.dump() == report.dump());
}

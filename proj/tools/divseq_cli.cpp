#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "divseq/errors.hpp"
#include "divseq/job.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kParse = 2, kHypothesis = 3, kCertification = 4 };

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int report_error(const fs::path& out_dir, int code, divseq::Json error) {
  std::cerr << "divseq: " << error["message"].get<std::string>() << '\n';
  try {
    fs::create_directories(out_dir);
    write_file(out_dir / "error.json", error.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "divseq: " << e.what() << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisor sequences of points on split semiabelian schemes over Q(t)"};
  std::string job_path;
  std::string out_dir = ".";
  std::optional<int> nmax, window;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  app.add_option("--job", job_path, "job file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--nmax", nmax, "sequence horizon")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--window", window, "stabilization window")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "json, csv or both")->check(CLI::IsMember({"json", "csv", "both"}));
  CLI11_PARSE(app, argc, argv);

  const fs::path out(out_dir);
  try {
    std::ifstream in(job_path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    divseq::JobSpec spec = divseq::parse_job(buffer.str());
    if (nmax) spec.nmax = *nmax;
    if (window) spec.window = *window;
    if (threads) spec.threads = *threads;
    if (seed) spec.seed = *seed;
    if (format) spec.format = *format;

    divseq::JobOutput result = divseq::run_job(spec);
    fs::create_directories(out);
    if (spec.format != "csv") write_file(out / "report.json", result.report.dump(2) + "\n");
    if (spec.format != "json" && result.csv) write_file(out / "series.csv", *result.csv);
    return kOk;
  } catch (const divseq::ParseError& e) {
    return report_error(out, kParse,
                        {{"error", "parse_error"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}});
  } catch (const divseq::HypothesisError& e) {
    return report_error(out, kHypothesis, {{"error", "hypothesis_violation"}, {"kind", e.kind()}, {"message", e.what()}});
  } catch (const divseq::CertificationError& e) {
    return report_error(out, kCertification, {{"error", "certification_failure"}, {"message", e.what()}});
  } catch (const std::exception& e) {
    return report_error(out, kOther, {{"error", "error"}, {"message", e.what()}});
  }
}

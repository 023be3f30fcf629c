#pragma once

// Job files are flat `key = value` lines. `#` starts a comment outside
// quotes. A value is an integer, a bare word, a double-quoted string, or a
// bracketed, comma-separated list of those on one line:
//
//   group  = "gm"            # gm | ec | mixed | indep | intseq
//   coords = ["t", "1 - t"]
//   nmax   = 60
//
// Keys: group, coords, q_coords (gm, indep); a_invariants, point, q_point
// (ec, mixed); f (mixed); mode = exact | modulo_constants (indep); a, b
// (intseq); nmax, seed, threads, window, format = json | csv | both.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divseq/mulgrp.hpp"
#include "divseq/report.hpp"
#include "divseq/seed.hpp"

namespace divseq {

enum class JobGroup { kGm, kEc, kMixed, kIndep, kIntseq };
const char* to_string(JobGroup g);

/// A polynomial-text value with its position in the job file.
struct TextField {
  std::string text;
  int line = 0;
  int column = 0;  // 1-based column of the first character of the text
};

struct JobSpec {
  JobGroup group = JobGroup::kGm;
  std::vector<TextField> coords, q_coords, a_invariants, point, q_point;
  std::optional<TextField> f;
  IndependenceMode mode = IndependenceMode::kExact;
  BigInt a = 0, b = 0;
  int nmax = 20;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::optional<int> window;
  std::string format = "both";
};

/// Throws ParseError with the offending line and column.
JobSpec parse_job(std::string_view text);

struct JobOutput {
  Json report;
  std::optional<std::string> csv;
};

/// Runs the pipeline for the job under the job's seed. Polynomial text is
/// parsed here, so malformed values raise ParseError with file positions.
JobOutput run_job(const JobSpec& spec);

}  // namespace divseq

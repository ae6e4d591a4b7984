#pragma once

// Command-line driver.  Five commands (catalog, analyze-pair, coset-count,
// amplifier-plan, verify-arch) dispatch into the library; each run writes
// one report (json, csv, or text) tagged schema_version 1, with exact
// rationals rendered as "p/q" strings and no timestamps, so a fixed
// (config, seed) reproduces the output byte for byte.
//
// Exit codes: 0 success (a negative mathematical answer, such as a pair
// that is not H-large, is still success), 2 invalid input, 3 internal
// consistency failure, 4 numeric failure.

#include "amp/basics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace amp {

struct RunConfig {
  std::string command;     // catalog | analyze-pair | coset-count | amplifier-plan | verify-arch
  std::string pair_label;  // analyze-pair, amplifier-plan: catalog label
  std::string datum_type;  // coset-count: root datum name such as "A2" or "GL2"
  IntVec lambda;           // coset-count: cocharacter coordinates
  Int q = 2;               // coset-count: residue field size
  Int big_p = 0;           // amplifier-plan: amplifier length P
  std::string amp_a = "10";     // amplifier-plan: trace formula error exponent A
  std::string delta0 = "1";     // amplifier-plan: density saving delta_0
  std::string eta = "1";        // amplifier-plan: spectral window exponent
  std::string epsilon = "1/8";  // amplifier-plan: slack in the place-sum gain
  std::string model = "h3";     // verify-arch: h2 | h3
  std::string suite = "all";    // verify-arch: one check name or "all"
  unsigned seed = 42;           // verify-arch: Monte Carlo seed
  std::string output = "json";  // json | csv | text
};

// Parse command-line arguments (excluding the program name).  Throws
// invalid_input on unknown flags or commands, malformed values, missing
// required options, or a request for --help (which only run_cli honors).
RunConfig parse_args(const std::vector<std::string>& args);

// Load a RunConfig from a JSON document {"config_version": 1,
// "command": ..., ...} whose keys mirror the flags; unknown keys, a
// missing or wrong version, and type mismatches are rejected.
RunConfig parse_config_file(const std::string& path);

// Execute one command and write its report to `out`; returns the exit
// code.  Throws rather than catching: the caller owns the error policy.
int run(const RunConfig& config, std::ostream& out);

// Full driver: parse (flags or --config FILE), run, map exceptions to the
// exit codes above, and describe failures on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace amp

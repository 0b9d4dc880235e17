#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fplab::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

enum class Format { Json, Csv };

struct Output {
  std::string path = "-";  // "-" writes to the provided stream
  Format format = Format::Json;
};

struct CClassArgs {
  std::vector<int> ids;  // empty: all catalog items
  std::size_t grid_points = 100;
  double s_max = 10.0;
  std::optional<double> tol;
  bool inject_broken = false;  // swap item 1 for s + t
};

struct E1Args {
  int n_max = 50;
  std::optional<double> tol;
};

struct InputArgs {
  std::string input = "-";  // "-" reads the provided stream
  std::optional<double> tol;
  std::optional<std::string> start;  // picard: single start label
  std::size_t samples = 0;           // solve-volterra: condition (ii) samples
  std::uint64_t seed = 0;
};

int cmd_check_cclass(const CClassArgs& args, const Output& out, std::ostream& os);
int cmd_example_e1(const E1Args& args, const Output& out, std::ostream& os);
int cmd_verify_space(const InputArgs& args, const Output& out, std::istream& is, std::ostream& os);
int cmd_picard(const InputArgs& args, const Output& out, std::istream& is, std::ostream& os);
int cmd_solve_volterra(const InputArgs& args, const Output& out, std::istream& is,
                       std::ostream& os);

/// Full command line entry point; returns the process exit code.
int run(int argc, char** argv, std::istream& is, std::ostream& os, std::ostream& err);

}  // namespace fplab::cli

#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "nprk/stability.hpp"

namespace nprk::cli {

/// Written next to every CSV the tool produces.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::string version;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<std::string> outputs;

  [[nodiscard]] std::string to_json() const;
};

/// Exit codes: 0 success, 1 usage error, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Runs the tool with argv[0] being the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "h0/r^k" gives h0, h0/r, ..., h0/r^k. Throws InvalidConfig.
std::vector<double> parse_h_spec(const std::string& spec);
/// "re0,re1,im0,im1,n". Throws InvalidConfig.
GridSpec parse_grid(const std::string& spec);
/// "RE,IM", optionally prefixed with "z1=". Throws InvalidConfig.
Complex parse_slice(const std::string& spec);
/// "T", optionally prefixed with "theta=". Throws InvalidConfig.
double parse_wedge(const std::string& spec);

}  // namespace nprk::cli

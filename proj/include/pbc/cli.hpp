#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbc::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_invalid_config = 2,
  exit_inconclusive = 3,
};

// args excludes the program name. Results go to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.12g formatting used for every numeric CSV field.
std::string fmt(double v);

}  // namespace pbc::cli

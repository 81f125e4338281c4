#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nclab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAccuracy = 2;
inline constexpr int kExitDomain = 3;

// Runs one command line (without the program name). Tables and reports go to `out` unless an
// output file is selected; diagnostics, usage and error messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SweepRange {
  std::string name;
  double start = 0.0, stop = 0.0, step = 0.0;

  // "name=start:stop:step", inclusive of stop up to rounding; zero step is a DomainError.
  static SweepRange parse(const std::string& text);
  std::vector<double> values() const;
};

}  // namespace nclab

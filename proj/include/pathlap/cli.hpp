#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pathlap {

// Runs one command line (without the program name) and writes results to the
// given streams. Exit codes: 0 success, 1 verify mismatch, 2 parse or usage
// error, 3 guardrail exceeded, 4 hypothesis violation, 5 spectral-identity
// violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathlap

#pragma once

#include <iosfwd>
#include <string>

#include "ave/problem.hpp"

// Text problem format, whitespace-delimited:
//   AVE m n
//   <m rows of n entries: A>
//   <m rows of n entries: B>
//   <one row of m entries: c>
// Values are written with 17 significant digits so read(write(p)) is exact.

namespace ave {

void write_problem(std::ostream& os, const AveProblem& p);
void write_problem_file(const std::string& path, const AveProblem& p);

// Throws ParseError on malformed input.
AveProblem read_problem(std::istream& is);
AveProblem read_problem_file(const std::string& path);

}  // namespace ave

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "psp/psp.hpp"

namespace psp {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& msg)
      : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

// One equation per line: `X1 = 0.5*X1^2 + 0.1*X2^2 + 0.4`.
// Coefficients are decimals or p/q fractions, parsed exactly; `#` starts a
// comment; every used variable needs a defining equation.
Psp parse_psp(const std::string& text);
Psp parse_psp_stream(std::istream& in);
Psp load_psp_file(const std::string& path);

// Canonical text form; byte-deterministic for a given system.
std::string print_psp(const Psp& f);

}  // namespace psp

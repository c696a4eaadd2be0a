#pragma once

#include "tensegrity/continuation.hpp"
#include "tensegrity/rational_poly.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tensegrity::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand (argv[0] is the program name). JSON reports go to `out` and, with
/// --out, to <dir>/<subcommand>.json; diagnostics go to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct PolynomialSystemFile {
    std::vector<std::string> variables;
    continuation::PolySystem system;
};

/// {"variables": ["x", ...], "equations": ["x^3 - 7*x^2 + 17*x - 15", ...]} with rational
/// coefficients.
PolynomialSystemFile load_polynomial_system(const std::string& path);

continuation::MultiPoly to_multipoly(const symbolic::RationalPoly& p);

}  // namespace tensegrity::cli

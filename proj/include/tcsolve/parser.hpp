#pragma once

#include "tcsolve/diff_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tcsolve {

/// Run settings; the config file and command-line flags override the defaults.
struct CliSettings {
    /// Relative settle tolerance of the Nevanlinna quadrature.
    double tolerance = 1e-3;
    std::optional<unsigned> degree_cap;
    /// Empty means the adaptive ladder.
    std::vector<double> radii;
    int grid = 256;
    bool assume_small_pole_count = true;
};

/// Reads "key = value" lines (# comments) into settings; unknown keys raise InvalidInput.
void apply_config(CliSettings& settings, const std::string& text);
std::vector<double> parse_radii(const std::string& text);

struct ParsedInput {
    std::optional<TCEquation> equation;
    std::vector<ExpFraction> candidates;
    std::optional<LinearOde> ode;
    /// ode block "order=1": a first-order equation f' + r0 f = r2.
    unsigned ode_order = 2;
    /// Explicit function for the numeric commands.
    std::optional<ExpFraction> function;
    /// Degree n when no equation is given.
    std::optional<unsigned> n;
};

/// An expression in z only (exp allowed, no f).
ExpFraction parse_function(const std::string& text);
/// An expression in z only without exponentials.
RationalFunction parse_rational(const std::string& text);
/// A differential polynomial with rational coefficients.
DiffPoly parse_diff_poly(const std::string& text);
/// "f^n + P(z, f) = h"; terms on the right form h.
TCEquation parse_equation(const std::string& text);

/// Input text: either a bare equation or a block file with equation:, candidate:, ode:,
/// function: and n: lines. Errors carry line and column.
ParsedInput cli_parse(const std::string& text);
/// Every equation: block starts a new input.
std::vector<ParsedInput> cli_parse_all(const std::string& text);

}  // namespace tcsolve

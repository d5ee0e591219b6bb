#pragma once

#include "tcsolve/diff_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tcsolve {

enum class Verdict { Verified, FoundSolutions, NoCandidateFound, NonexistenceEstablished };

const char* to_string(Verdict v);

struct BranchOutcome {
    std::string label;
    std::string outcome;
    /// Every candidate the branch admits was tried, so failure rules the branch out.
    bool exhaustive = false;
};

struct SolutionReport {
    Verdict verdict = Verdict::NoCandidateFound;
    std::vector<ExpPoly> solutions;
    /// Nonvanishing remainder of the principal candidate when nothing verified.
    std::optional<ExpPoly> residual;
    std::vector<BranchOutcome> branch_trace;
    /// Hypotheses n >= 3 and deg P <= n - 2 hold, so theorem-backed claims are allowed.
    bool theorem_coverage = false;
    std::string coverage_note;
    unsigned degree_cap = 0;
};

struct SolverOptions {
    bool assume_small_pole_count = true;
    /// Cap on numerator and denominator degrees of searched rational parts; default 2 max deg + 10.
    std::optional<unsigned> degree_cap;
};

/// f^n + P(z, f) - h == 0 exactly.
bool sol_verify(const TCEquation& eq, const ExpFraction& f);

/// f = q e^alpha.
SolutionReport sol_search_case1(const TCEquation& eq, const SolverOptions& opt = {});
/// f = q1 e^beta + q2 e^-beta; ShapeMismatch unless h = p1 e^a + p2 e^-a.
SolutionReport sol_search_case2(const TCEquation& eq, const SolverOptions& opt = {});
/// f = q1 e^((a1 + a2)/(2n - 1)) + q2; RatioMismatch unless the leading exponents have ratio n/(n-1).
SolutionReport sol_search_case3(const TCEquation& eq, const SolverOptions& opt = {});

SolutionReport sol_decide(const TCEquation& eq, const SolverOptions& opt = {});

}  // namespace tcsolve

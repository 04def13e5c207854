#pragma once

#include <iosfwd>
#include <optional>

#include "twave/closed_form.hpp"
#include "twave/config.hpp"

namespace twave {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInadmissible = 2,
    kExitVerifyFailed = 3,
    kExitSingularLattice = 4,
    kExitUnsupportedChart = 5,
};

/// Thresholds applied by cmd_verify.
inline constexpr double kOdeRelTolerance = 1e-10;
inline constexpr double kOrderLo = 1.8;
inline constexpr double kOrderHi = 2.2;
inline constexpr double kRk4Deviation = 1e-6;

/// Builds the scenario's closed-form solution, restricted to cfg.domain.
PowerLawSolution build_solution(const RunConfig& cfg);

/// Writes <out>/solution.json and prints a summary.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs the configured checks on the scenario solution, or on the solution
/// in cfg.verify.solution_file when set. Writes one report per check.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes front_NNNN.json + front_NNNN.csv per requested time.
int cmd_front(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// `twave solve|verify|front --config <path> [--out <dir>] [--seed N] [--solution <file>]`
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twave

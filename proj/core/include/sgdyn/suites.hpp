#pragma once

#include "sgdyn/convolution.hpp"
#include "sgdyn/groupoid.hpp"
#include "sgdyn/report.hpp"

namespace sgdyn {

/// Named systems used by the suites and the CLI.
Action shift_action();
Action ledrappier_action();
Action counterexample_action();
Dictionary counterexample_dictionary();

/// One verification suite per subject area. Every check is exact; a failed
/// check carries its first witness. Suites: scalar, lattice, cocycle,
/// operators, groupoid, convolution, ledrappier, circle, counterexample.
Report run_suite(const RunConfig& cfg);

/// Enumerates all progressive dictionaries of the given width and reports,
/// per dictionary, relation-commutation and star-commutation of (shift, T_D)
/// at the given depth. Deterministic order.
Report search_dictionaries(int width, const RunConfig& cfg);

/// Known suite names, for CLI validation/help.
std::vector<std::string> suite_names();

}  // namespace sgdyn

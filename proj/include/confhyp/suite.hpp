#pragma once

#include "confhyp/config.hpp"
#include "confhyp/report.hpp"

namespace confhyp {

/// Runs the enabled checks in the fixed order of all_check_names(). A check
/// that throws is recorded as failed with its error message.
VerificationReport run_suite(const RunConfig& cfg);

}  // namespace confhyp

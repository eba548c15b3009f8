#pragma once

#include "config.hpp"

#include <ostream>

namespace leglab::cli {

// Exit-code contract: 0 = all checks pass / task completed, 1 = a check or
// run failed, 2 = config or usage error (raised as ConfigError by callers).

int cmd_verify(const VerifyConfig& cfg, std::ostream& out);
int cmd_gpr_track(const GprTrackConfig& cfg, std::ostream& out);
int cmd_ou_flow(const OuFlowConfig& cfg, std::ostream& out);
int cmd_quadratic_sr(const QuadraticSrConfig& cfg, std::ostream& out);
int cmd_linear_p_sr(const LinearPSrConfig& cfg, std::ostream& out);
int cmd_readout_task(const harness::ReadoutTaskSpec& spec, std::ostream& out);

}  // namespace leglab::cli

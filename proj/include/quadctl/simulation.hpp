#pragma once

#include "quadctl/log.hpp"
#include "quadctl/metrics.hpp"
#include "quadctl/scenario.hpp"

#include <string>
#include <vector>

namespace quadctl {

enum class RunStatus { Completed, Diverged };

struct RunResult {
	std::vector<LogRecord> log;
	Metrics metrics;
	RunStatus status{RunStatus::Completed};
	std::string failure;               // empty unless the run was terminated
	double max_reference_age{0.0};     // s, age of the Q_d seen by the inner loop
};

/**
 * Runs the cascade: every outer tick samples the trajectory, computes thrust
 * and Q_d (composed with the pitch maneuver when present) and differentiates
 * the Q_d stream for omega_d and omega_d'; every inner tick computes the
 * torque; the rigid body integrates at dt against the true parameter schedule.
 * Controllers only see the nominal parameters. One log record per outer tick.
 *
 * Divergence or a controller fault ends the run early with the partial log
 * and status Diverged. Results depend only on the scenario and its seed.
 */
RunResult run_scenario(const Scenario &scenario);

} // namespace quadctl

#pragma once

#include "quadctl/log.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace quadctl {

class EmptyLog : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

struct Metrics {
	// RMSE of |P~| (m) and of the attitude error angle 2 acos|q~0| (rad).
	// The plain fields cover the window after settling (whole run when unsettled).
	double position_rmse{0.0};
	double position_rmse_full{0.0};
	double position_rmse_final{0.0};
	double attitude_rmse{0.0};
	double attitude_rmse_full{0.0};
	double attitude_rmse_final{0.0};
	double peak_attitude_error{0.0};

	double settling_time{0.0};      // |P~| within 5 % of its initial value from here on
	bool settled{true};

	double torque_effort{0.0};      // integral of |tau| dt
	double thrust_effort{0.0};      // integral of thrust dt
	double chattering_index{0.0};   // mean |tau_k - tau_(k-1)| per logged tick
	double max_thrust{0.0};

	bool diverged{false};
	double final_window{10.0};      // s, for the *_final fields
};

/// Throws EmptyLog for an empty log. `diverged` is set when any logged value is
/// non-finite; run_scenario() also sets it for terminated runs.
Metrics compute_metrics(const std::vector<LogRecord> &log, double final_window = 10.0);

/// First time after which `signal` stays within `fraction` of its first value.
/// Returns -1 when it never settles.
double settling_time(const std::vector<LogRecord> &log, const std::function<double(const LogRecord &)> &signal,
		     double fraction);

struct MonotoneCheck {
	std::size_t samples{0};
	std::size_t violations{0};

	double fraction() const { return samples > 1 ? static_cast<double>(violations) / static_cast<double>(samples - 1) : 0.0; }
};

/**
 * Resamples `signal` every `period` seconds from `t_start` on (nearest logged
 * tick at or after each sample time) and counts increases larger than
 * `tolerance` between consecutive samples.
 */
MonotoneCheck check_non_increasing(const std::vector<LogRecord> &log,
				   const std::function<double(const LogRecord &)> &signal, double t_start,
				   double period = 0.1, double tolerance = 1e-3);

/// End of the reaching phase: first logged time with |s| <= threshold, or -1.
double reaching_time(const std::vector<LogRecord> &log, double threshold);

} // namespace quadctl

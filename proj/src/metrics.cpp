#include "quadctl/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace quadctl {

namespace {

double error_angle(const LogRecord &r)
{
	return 2.0 * std::acos(std::min(1.0, std::abs(r.attitude_error(0))));
}

double position_norm(const LogRecord &r)
{
	return r.position_error.norm();
}

/// Root mean square of `f` over records with t >= t_from.
template <typename F>
double rms_from(const std::vector<LogRecord> &log, double t_from, F f)
{
	double sum = 0.0;
	std::size_t n = 0;

	for (const LogRecord &r : log) {
		if (r.t >= t_from) {
			const double v = f(r);
			sum += v * v;
			++n;
		}
	}

	return n ? std::sqrt(sum / static_cast<double>(n)) : 0.0;
}

bool record_finite(const LogRecord &r)
{
	for (double v : to_row(r)) {
		if (!std::isfinite(v)) {
			return false;
		}
	}

	return true;
}

} // namespace

double settling_time(const std::vector<LogRecord> &log, const std::function<double(const LogRecord &)> &signal,
		     double fraction)
{
	if (log.empty()) {
		throw EmptyLog("settling_time: empty log");
	}

	const double band = fraction * std::abs(signal(log.front()));

	// Walk backwards to the last sample outside the band.
	for (std::size_t i = log.size(); i-- > 0;) {
		const double v = std::abs(signal(log[i]));

		if (!(v <= band)) {
			return i + 1 < log.size() ? log[i + 1].t : -1.0;
		}
	}

	return log.front().t;
}

Metrics compute_metrics(const std::vector<LogRecord> &log, double final_window)
{
	if (log.empty()) {
		throw EmptyLog("compute_metrics: empty log");
	}

	Metrics m;
	m.final_window = final_window;

	const double t0 = log.front().t;
	const double t_end = log.back().t;

	const double settle = settling_time(log, position_norm, 0.05);
	m.settled = settle >= 0.0;
	m.settling_time = m.settled ? settle - t0 : t_end - t0;

	const double t_window = m.settled ? settle : t0;
	const double t_final = t_end - final_window;

	m.position_rmse = rms_from(log, t_window, position_norm);
	m.position_rmse_full = rms_from(log, t0, position_norm);
	m.position_rmse_final = rms_from(log, t_final, position_norm);
	m.attitude_rmse = rms_from(log, t_window, error_angle);
	m.attitude_rmse_full = rms_from(log, t0, error_angle);
	m.attitude_rmse_final = rms_from(log, t_final, error_angle);

	double chatter = 0.0;

	for (std::size_t i = 0; i < log.size(); ++i) {
		const LogRecord &r = log[i];
		m.peak_attitude_error = std::max(m.peak_attitude_error, error_angle(r));
		m.max_thrust = std::max(m.max_thrust, r.thrust);

		if (i + 1 < log.size()) {
			const double h = log[i + 1].t - r.t;
			m.torque_effort += r.torque.norm() * h;
			m.thrust_effort += std::abs(r.thrust) * h;
		}

		if (i > 0) {
			chatter += (r.torque - log[i - 1].torque).norm();
		}

		if (!record_finite(r)) {
			m.diverged = true;
		}
	}

	if (log.size() > 1) {
		m.chattering_index = chatter / static_cast<double>(log.size() - 1);
	}

	return m;
}

MonotoneCheck check_non_increasing(const std::vector<LogRecord> &log,
				   const std::function<double(const LogRecord &)> &signal, double t_start, double period,
				   double tolerance)
{
	MonotoneCheck out;

	if (log.empty() || !(period > 0.0)) {
		return out;
	}

	double next = t_start;
	double prev = 0.0;

	// Half a tick of slack so samples at nominal multiples of the period are not skipped.
	const double slack = log.size() > 1 ? 0.5 * (log[1].t - log[0].t) : 0.0;

	for (const LogRecord &r : log) {
		if (r.t + slack < next) {
			continue;
		}

		const double v = signal(r);

		if (out.samples > 0 && v > prev + tolerance) {
			++out.violations;
		}

		prev = v;
		++out.samples;
		next += period;
	}

	return out;
}

double reaching_time(const std::vector<LogRecord> &log, double threshold)
{
	for (const LogRecord &r : log) {
		if (r.surface.norm() <= threshold) {
			return r.t;
		}
	}

	return -1.0;
}

} // namespace quadctl

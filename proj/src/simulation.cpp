#include "quadctl/simulation.hpp"

#include "quadctl/euler_baseline.hpp"

#include <algorithm>
#include <random>

namespace quadctl {

namespace {

UnitQuaternion pitch_rotation(double angle)
{
	return UnitQuaternion::from_axis_angle(Vec3::UnitY(), angle);
}

RigidBodyState initial_state(const Scenario &sc)
{
	RigidBodyState s = sc.initial;

	if (sc.position_jitter > 0.0) {
		std::mt19937_64 rng(sc.seed);
		std::uniform_real_distribution<double> jitter(-sc.position_jitter, sc.position_jitter);

		for (int i = 0; i < 3; ++i) {
			s.position(i) += jitter(rng);
		}
	}

	return s;
}

// Everything one log record needs beyond the state itself.
struct TickSnapshot {
	TrajectorySample sample;
	AttitudeReference reference;
	Vec3 position_error{Vec3::Zero()};
	Vec3 velocity_error{Vec3::Zero()};
	AttitudeError attitude_error;
	Vec3 omega_error{Vec3::Zero()};
	ControlOutput control;
	AdaptiveOuterState outer;
	AdaptiveInnerState inner;
	SlidingState sliding;
	bool gimbal{false};
};

LogRecord make_record(double t, const RigidBodyState &s, const TickSnapshot &k, const VehicleParams &truth)
{
	LogRecord r;
	r.t = t;
	r.position = s.position;
	r.velocity = s.velocity;
	r.attitude = s.attitude.coeffs();
	r.omega = s.omega;
	r.position_d = k.sample.position;
	r.attitude_d = k.reference.attitude.coeffs();
	r.omega_d = k.reference.omega;
	r.position_error = k.position_error;
	r.velocity_error = k.velocity_error;
	r.attitude_error = k.attitude_error.canonical().coeffs();
	r.omega_error = k.omega_error;
	r.thrust = k.control.thrust;
	r.torque = k.control.torque;
	r.psi_hat = k.outer.psi_hat;
	r.lambda_hat = k.inner.lambda_hat;
	r.surface = k.sliding.surface;
	r.v_pos = position_lyapunov(k.position_error, k.velocity_error);
	r.v_att = attitude_lyapunov(k.sliding.surface);
	r.mass = truth.mass;
	r.inertia = truth.inertia;

	for (int i = 0; i < 3; ++i) {
		r.branch[i] = static_cast<int>(k.sliding.branch[i]);
	}

	r.gimbal_flag = k.gimbal ? 1 : 0;
	return r;
}

} // namespace

RunResult run_scenario(const Scenario &sc)
{
	sc.validate();

	RunResult result;
	const VehicleParams nominal = sc.schedule.nominal();
	const long outer_div = sc.outer_divider();
	const long inner_div = sc.inner_divider();
	const long steps = sc.total_steps();
	const double outer_period = static_cast<double>(outer_div) * sc.dt;
	const double inner_period = static_cast<double>(inner_div) * sc.dt;

	result.log.reserve(static_cast<std::size_t>(steps / outer_div + 1));

	RigidBodyState state = initial_state(sc);
	ReferenceDifferentiator differentiator(outer_period);
	EulerReference euler_ref;
	TickSnapshot tick;
	tick.outer = sc.outer_initial;
	tick.inner = sc.inner_initial;
	double last_outer = 0.0;

	try {
		for (long k = 0; k <= steps; ++k) {
			const double t = static_cast<double>(k) * sc.dt;

			if (k % outer_div == 0) {
				tick.sample = sample(sc.trajectory, t);
				const bool maneuvering = sc.maneuver && sc.maneuver->active(t);
				const OuterStepResult o = outer_step(state, tick.sample, tick.outer, sc.outer, nominal, outer_period);
				tick.position_error = o.position_error;
				tick.velocity_error = o.velocity_error;
				tick.control.thrust = o.output.thrust;
				UnitQuaternion q_d = o.output.attitude;

				if (maneuvering) {
					// The override, not missing damping, drives the velocity error here,
					// so psi_hat is held rather than wound up by it.
					q_d = q_d * pitch_rotation(sc.maneuver->pitch_at(t));

				} else {
					tick.outer = o.adaptive;
				}

				tick.reference = differentiator.push(q_d);

				if (sc.controller == ControllerKind::Euler) {
					euler_ref = euler_reference(tick.reference);
				}

				last_outer = t;
			}

			if (k % inner_div == 0) {
				result.max_reference_age = std::max(result.max_reference_age, t - last_outer);

				if (sc.controller == ControllerKind::Quaternion) {
					const InnerStepResult in = inner_step(state, tick.reference, tick.inner, tick.sliding, sc.inner,
									      nominal, inner_period);
					tick.control.torque = in.torque;
					tick.inner = in.adaptive;
					tick.sliding = in.sliding;
					tick.attitude_error = in.error;
					tick.omega_error = in.omega_error;
					tick.gimbal = false;

				} else {
					const EulerStepResult in = euler_attitude_controller(state, euler_ref, tick.inner, tick.sliding,
											     sc.inner, nominal, inner_period);
					tick.control.torque = in.torque;
					tick.inner = in.adaptive;
					tick.sliding = in.sliding;
					tick.attitude_error = quat_error(state.attitude, tick.reference.attitude).canonical();
					tick.omega_error = omega_error(
						state.omega, relative_rotation(state.attitude, tick.reference.attitude),
						tick.reference.omega);
					tick.gimbal = in.gimbal_proximity;
				}
			}

			if (k % outer_div == 0) {
				result.log.push_back(make_record(t, state, tick, sc.schedule.params_at(t)));
			}

			if (k == steps) {
				break;
			}

			state = step_rk4(state, tick.control, sc.schedule, t, sc.dt);
		}

	} catch (const NumericalDivergence &e) {
		result.status = RunStatus::Diverged;
		result.failure = e.what();

	} catch (const ControllerFault &e) {
		result.status = RunStatus::Diverged;
		result.failure = e.what();
	}

	if (result.log.empty()) {
		result.log.push_back(make_record(0.0, state, tick, sc.schedule.params_at(0.0)));
	}

	result.metrics = compute_metrics(result.log);

	if (result.status == RunStatus::Diverged) {
		result.metrics.diverged = true;
	}

	return result;
}

} // namespace quadctl

#include "quadctl/attitude_controller.hpp"

#include <algorithm>
#include <cmath>

namespace quadctl {

void InnerGains::validate() const
{
	if (!(gamma1 > 0.0) || !(mu1 > 0.0) || !(lambda > 0.0) || !(epsilon > 0.0)) {
		throw std::invalid_argument("inner gains gamma1, mu1, lambda and epsilon must be strictly positive");
	}

	if (c1 <= 0 || c2 <= 0 || c1 >= c2) {
		throw std::invalid_argument("inner exponent needs positive integers with c1 < c2");
	}

	if (!(phi >= 0.0)) {
		throw std::invalid_argument("boundary layer width must be non-negative");
	}
}

Vec3 omega_error(const Vec3 &omega, const Mat3 &rel_rotation, const Vec3 &omega_d)
{
	return omega - rel_rotation * omega_d;
}

double signed_power(double x, double p)
{
	if (x == 0.0) {
		return 0.0;
	}

	return std::copysign(std::pow(std::abs(x), p), x);
}

RhoResult rho(const Vec3 &q_err, const Vec3 &surface_prev, const InnerGains &gains)
{
	const bool surface_zero = surface_prev.norm() <= kSurfaceZero;
	const double p = gains.exponent();

	RhoResult r;

	for (int i = 0; i < 3; ++i) {
		if (surface_zero || std::abs(q_err(i)) > gains.epsilon) {
			r.value(i) = signed_power(q_err(i), p);
			r.branch[i] = Branch::Power;

		} else {
			r.value(i) = q_err(i);
			r.branch[i] = Branch::Linear;
		}
	}

	return r;
}

SlidingState sliding_surface(const Vec3 &q_err, const Vec3 &w_err, const InnerGains &gains,
			     const Vec3 &surface_prev)
{
	const RhoResult r = rho(q_err, surface_prev, gains);
	return {gains.gamma1 * r.value + w_err, r.branch};
}

Vec3 smoothed_sign(const Vec3 &s, double phi)
{
	Vec3 out;

	for (int i = 0; i < 3; ++i) {
		if (phi > 0.0) {
			out(i) = std::clamp(s(i) / phi, -1.0, 1.0);

		} else {
			out(i) = (s(i) > 0.0) - (s(i) < 0.0);
		}
	}

	return out;
}

Vec3 surface_rate_term(const Vec3 &q_err, const Vec3 &q_err_dot, const BranchFlags &branch, const InnerGains &gains)
{
	const double p = gains.exponent();
	Vec3 out;

	for (int i = 0; i < 3; ++i) {
		if (gains.derivative == SurfaceDerivative::LiteralProduct) {
			out(i) = p * q_err(i) * q_err_dot(i);

		} else if (branch[i] == Branch::Linear) {
			out(i) = q_err_dot(i);

		} else {
			const double mag = std::max(std::abs(q_err(i)), gains.epsilon);
			out(i) = p * std::pow(mag, p - 1.0) * q_err_dot(i);
		}
	}

	return out;
}

Vec4 error_kinematics(const AttitudeError &err, const Vec3 &w_err)
{
	Vec4 d;
	d(0) = -0.5 * err.vec.dot(w_err);
	d.tail<3>() = 0.5 * (err.scalar * w_err + err.vec.cross(w_err));
	return d;
}

Vec3 torque_control(const TorqueInputs &in, const SlidingState &sliding, const AdaptiveInnerState &adaptive,
		    const InnerGains &gains, const VehicleParams &params)
{
	const Vec3 &J = params.inertia;
	const Vec3 rw_d = in.rel_rotation * in.omega_d;
	const Vec3 q_err_dot = error_kinematics(in.error, in.omega_error).tail<3>();
	const Vec3 shaping = surface_rate_term(in.error.vec, q_err_dot, sliding.branch, gains);

	const Vec3 feedforward = -J.cwiseProduct(in.omega_error.cross(rw_d) - in.rel_rotation * in.omega_d_dot);
	const Vec3 gyroscopic = -J.cwiseProduct(in.omega).cross(in.omega);

	return feedforward + gyroscopic - gains.gamma1 * J.cwiseProduct(shaping) - gains.mu1 * sliding.surface
	       - adaptive.lambda_hat.cwiseProduct(smoothed_sign(sliding.surface, gains.phi));
}

AdaptiveInnerState update_lambda(const AdaptiveInnerState &adaptive, const Vec3 &surface, const InnerGains &gains,
				 double dt)
{
	if (!(dt > 0.0)) {
		throw std::invalid_argument("adaptation step must be positive");
	}

	AdaptiveInnerState next = adaptive;
	next.lambda_hat.array() += gains.lambda * surface.norm() * dt;
	return next;
}

ErrorDerivatives attitude_error_dynamics(const AttitudeError &err, const Vec3 &w_err, const Vec3 &omega,
					 const Vec3 &omega_d, const Vec3 &omega_d_dot, const Mat3 &rel_rotation,
					 const Vec3 &torque, const VehicleParams &params, ScalarRateSign sign)
{
	const Vec3 &J = params.inertia;
	const Vec4 dq = error_kinematics(err, w_err);

	ErrorDerivatives d;
	d.scalar_rate = sign == ScalarRateSign::Kinematic ? dq(0) : -dq(0);
	d.vec_rate = dq.tail<3>();

	const Vec3 rhs = J.cwiseProduct(omega).cross(omega) + torque
			 + J.cwiseProduct(w_err.cross(rel_rotation * omega_d)) - J.cwiseProduct(rel_rotation * omega_d_dot);
	d.omega_error_rate = rhs.cwiseQuotient(J);
	return d;
}

InnerStepResult inner_step(const RigidBodyState &state, const AttitudeReference &reference,
			   const AdaptiveInnerState &adaptive, const SlidingState &sliding_prev, const InnerGains &gains,
			   const VehicleParams &params, double dt)
{
	TorqueInputs in;
	in.error = quat_error(state.attitude, reference.attitude).canonical();
	in.rel_rotation = relative_rotation(state.attitude, reference.attitude);
	in.omega = state.omega;
	in.omega_d = reference.omega;
	in.omega_d_dot = reference.omega_dot;
	in.omega_error = omega_error(state.omega, in.rel_rotation, reference.omega);

	InnerStepResult r;
	r.sliding = sliding_surface(in.error.vec, in.omega_error, gains, sliding_prev.surface);
	r.torque = torque_control(in, r.sliding, adaptive, gains, params);
	r.adaptive = update_lambda(adaptive, r.sliding.surface, gains, dt);
	r.error = in.error;
	r.omega_error = in.omega_error;
	return r;
}

double torque_bound(double omega_max, double omega_d_max, double omega_d_dot_max, double omega_err_max,
		    double lambda_hat_max, const InnerGains &gains, const VehicleParams &params)
{
	const double p = gains.exponent();
	const double j_max = params.inertia.maxCoeff();
	const double slope = std::max(1.0, p * std::pow(gains.epsilon, p - 1.0));
	const double q_rate = 0.5 * omega_err_max;

	const double feedforward = j_max * (omega_err_max * omega_d_max + omega_d_dot_max);
	const double gyroscopic = j_max * omega_max * omega_max;
	const double shaping = j_max * gains.gamma1 * slope * q_rate;
	const double reaching = gains.mu1 * (gains.gamma1 * std::sqrt(3.0) + omega_err_max);
	const double switching = lambda_hat_max * std::sqrt(3.0);
	return feedforward + gyroscopic + shaping + reaching + switching;
}

double branch_jump_bound(double q_err_rate_max, double lambda_hat_max, const InnerGains &gains,
			 const VehicleParams &params)
{
	const double p = gains.exponent();
	const double eps = gains.epsilon;
	const double j_max = params.inertia.maxCoeff();
	const double surface_jump = gains.gamma1 * (std::pow(eps, p) - eps);
	const double slope_jump = std::abs(p * std::pow(eps, p - 1.0) - 1.0);
	return j_max * gains.gamma1 * slope_jump * q_err_rate_max + gains.mu1 * surface_jump + 2.0 * lambda_hat_max;
}

} // namespace quadctl

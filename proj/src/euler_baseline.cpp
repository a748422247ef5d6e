#include "quadctl/euler_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace quadctl {

EulerExtraction quat_to_euler(const UnitQuaternion &q)
{
	const Mat3 R = quat_to_rot(q);
	EulerExtraction out;
	out.angles.pitch = std::asin(std::clamp(-R(2, 0), -1.0, 1.0));
	out.angles.roll = std::atan2(R(2, 1), R(2, 2));
	out.angles.yaw = std::atan2(R(1, 0), R(0, 0));
	out.gimbal_proximity = std::abs(std::cos(out.angles.pitch)) < kGimbalProximity;
	return out;
}

UnitQuaternion euler_to_quat(const EulerAngles &a)
{
	const UnitQuaternion qz = UnitQuaternion::from_axis_angle(Vec3::UnitZ(), a.yaw);
	const UnitQuaternion qy = UnitQuaternion::from_axis_angle(Vec3::UnitY(), a.pitch);
	const UnitQuaternion qx = UnitQuaternion::from_axis_angle(Vec3::UnitX(), a.roll);
	return qz * qy * qx;
}

Mat3 euler_rate_matrix(const EulerAngles &a)
{
	const double sr = std::sin(a.roll), cr = std::cos(a.roll);
	const double sp = std::sin(a.pitch), cp = std::cos(a.pitch);
	Mat3 W;
	W << 1.0, 0.0, -sp,
	     0.0, cr, sr * cp,
	     0.0, -sr, cr * cp;
	return W;
}

Mat3 euler_rate_matrix_inverse(const EulerAngles &a)
{
	const double sr = std::sin(a.roll), cr = std::cos(a.roll);
	const double cp = std::cos(a.pitch), tp = std::tan(a.pitch);
	Mat3 Wi;
	Wi << 1.0, sr * tp, cr * tp,
	      0.0, cr, -sr,
	      0.0, sr / cp, cr / cp;
	return Wi;
}

Mat3 euler_rate_matrix_derivative(const EulerAngles &a, const Vec3 &rates)
{
	const double sr = std::sin(a.roll), cr = std::cos(a.roll);
	const double sp = std::sin(a.pitch), cp = std::cos(a.pitch);
	const double dr = rates.x(), dp = rates.y();
	Mat3 dW;
	dW << 0.0, 0.0, -cp * dp,
	      0.0, -sr * dr, cr * cp * dr - sr * sp * dp,
	      0.0, -cr * dr, -sr * cp * dr - cr * sp * dp;
	return dW;
}

double euler_rate_condition(const EulerAngles &a)
{
	const Eigen::JacobiSVD<Mat3> svd(euler_rate_matrix(a));
	const Vec3 sv = svd.singularValues();

	if (!(sv(2) > 0.0)) {
		return std::numeric_limits<double>::infinity();
	}

	return sv(0) / sv(2);
}

double wrap_angle(double a)
{
	constexpr double two_pi = 2.0 * std::numbers::pi;
	a = std::remainder(a, two_pi);
	return a <= -std::numbers::pi ? a + two_pi : a;
}

EulerReference euler_reference(const AttitudeReference &reference)
{
	EulerReference out;
	out.angles = quat_to_euler(reference.attitude).angles;
	const Mat3 Wi = euler_rate_matrix_inverse(out.angles);
	out.rates = Wi * reference.omega;
	const Mat3 dW = euler_rate_matrix_derivative(out.angles, out.rates);
	out.accelerations = Wi * (reference.omega_dot - dW * out.rates);
	return out;
}

EulerStepResult euler_attitude_controller(const RigidBodyState &state, const EulerReference &reference,
					  const AdaptiveInnerState &adaptive, const SlidingState &sliding_prev,
					  const InnerGains &gains, const VehicleParams &params, double dt)
{
	const EulerExtraction meas = quat_to_euler(state.attitude);
	const EulerAngles &eta = meas.angles;
	const Vec3 &J = params.inertia;

	const Vec3 rates = euler_rate_matrix_inverse(eta) * state.omega;

	Vec3 e;
	Vec3 h, h_dot;
	const Vec3 e_dot = rates - reference.rates;

	for (int i = 0; i < 3; ++i) {
		e(i) = wrap_angle(eta.vec()(i) - reference.angles.vec()(i));
		h(i) = std::sin(0.5 * e(i));
		h_dot(i) = 0.5 * std::cos(0.5 * e(i)) * e_dot(i);
	}

	EulerStepResult r;
	const RhoResult shaped = rho(h, sliding_prev.surface, gains);
	r.sliding.surface = gains.gamma1 * shaped.value + e_dot;
	r.sliding.branch = shaped.branch;

	const Vec3 shaping = surface_rate_term(h, h_dot, shaped.branch, gains);
	const Vec3 angle_accel = reference.accelerations - gains.gamma1 * shaping;
	const Vec3 omega_dot_cmd = euler_rate_matrix(eta) * angle_accel
				   + euler_rate_matrix_derivative(eta, rates) * rates;

	r.torque = J.cwiseProduct(omega_dot_cmd) - J.cwiseProduct(state.omega).cross(state.omega)
		   - gains.mu1 * r.sliding.surface
		   - adaptive.lambda_hat.cwiseProduct(smoothed_sign(r.sliding.surface, gains.phi));
	r.adaptive = update_lambda(adaptive, r.sliding.surface, gains, dt);
	r.angle_error = e;
	r.condition = euler_rate_condition(eta);
	r.gimbal_proximity = meas.gimbal_proximity;
	return r;
}

} // namespace quadctl

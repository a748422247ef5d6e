#pragma once

#include "quadctl/attitude_controller.hpp"

namespace quadctl {

/// Z-Y-X (yaw, pitch, roll) angles of the body -> inertial rotation
/// R = Rz(yaw) Ry(pitch) Rx(roll).
struct EulerAngles {
	double roll{0.0};
	double pitch{0.0};
	double yaw{0.0};

	Vec3 vec() const { return {roll, pitch, yaw}; }
	static EulerAngles from_vec(const Vec3 &v) { return {v.x(), v.y(), v.z()}; }
};

/// |cos(pitch)| below this sets the gimbal-lock proximity flag.
static constexpr double kGimbalProximity = 1e-3;

struct EulerExtraction {
	EulerAngles angles;
	bool gimbal_proximity{false};
};

/// Never throws: near pitch = +-90 deg the result is still returned, flagged.
EulerExtraction quat_to_euler(const UnitQuaternion &q);

UnitQuaternion euler_to_quat(const EulerAngles &angles);

/// W with omega_body = W(angles) * [roll', pitch', yaw']'.
Mat3 euler_rate_matrix(const EulerAngles &angles);

/// W^-1; contains 1 / cos(pitch).
Mat3 euler_rate_matrix_inverse(const EulerAngles &angles);

/// dW/dt for the given angle rates.
Mat3 euler_rate_matrix_derivative(const EulerAngles &angles, const Vec3 &rates);

/// 2-norm condition number of W^-1 (equivalently of W).
double euler_rate_condition(const EulerAngles &angles);

/// Wraps to (-pi, pi].
double wrap_angle(double a);

struct EulerReference {
	EulerAngles angles;
	Vec3 rates{Vec3::Zero()};
	Vec3 accelerations{Vec3::Zero()};
};

/// Desired angles, angle rates and angle accelerations from a quaternion
/// reference, through W^-1 and its derivative.
EulerReference euler_reference(const AttitudeReference &reference);

struct EulerStepResult {
	Vec3 torque{Vec3::Zero()};
	AdaptiveInnerState adaptive;
	SlidingState sliding;
	Vec3 angle_error{Vec3::Zero()};
	double condition{1.0};
	bool gimbal_proximity{false};
};

/**
 * The attitude sliding-mode law written on Euler-angle errors instead of the
 * quaternion error, with the same gains:
 *
 *   e = wrap(eta - eta_d),  h = sin(e / 2)
 *   s = gamma1 rho(h) + (eta' - eta_d'),  eta' = W^-1 omega
 *   tau = J (W (eta_d'' - gamma1 d/dt rho(h)) + W' eta') - [J omega]x omega
 *         - mu1 s - Lambda . sgn(s)
 *
 * The half-angle sine makes the proportional term match the quaternion vector
 * error for small single-axis tilts. Near pitch = +-90 deg both eta' and
 * eta_d' go through W^-1 and blow up; nothing guards against that.
 */
EulerStepResult euler_attitude_controller(const RigidBodyState &state, const EulerReference &reference,
					  const AdaptiveInnerState &adaptive, const SlidingState &sliding_prev,
					  const InnerGains &gains, const VehicleParams &params, double dt);

} // namespace quadctl

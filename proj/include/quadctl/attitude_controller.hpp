#pragma once

#include "quadctl/reference.hpp"
#include "quadctl/rigid_body.hpp"

#include <array>
#include <cstdint>

namespace quadctl {

/// How the time derivative of the surface shaping term rho(q~) enters the torque.
enum class SurfaceDerivative {
	/// d/dt rho(q~): (c1/c2) |q~_i|^(c1/c2 - 1) q~_i' on the power branch, q~_i' on the linear one.
	Consistent,
	/// (c1/c2) q~_i q~_i', the product form printed alongside the torque law. Comparison runs only.
	LiteralProduct,
};

struct InnerGains {
	double gamma1{10.0};       // surface gain
	int c1{3};                 // power-law exponent c1 / c2
	int c2{5};
	double epsilon{0.01};      // power/linear switching threshold on |q~_i|
	double mu1{2.0};           // linear reaching gain
	double lambda{0.5};        // switching-gain adaptation rate
	double phi{0.01};          // boundary layer for sign(); 0 means the ideal sign
	SurfaceDerivative derivative{SurfaceDerivative::Consistent};

	double exponent() const { return static_cast<double>(c1) / static_cast<double>(c2); }

	void validate() const;
};

struct AdaptiveInnerState {
	Vec3 lambda_hat{0.1, 0.1, 0.1};
};

enum class Branch : std::uint8_t { Power = 0, Linear = 1 };

using BranchFlags = std::array<Branch, 3>;

struct SlidingState {
	Vec3 surface{Vec3::Zero()};
	BranchFlags branch{Branch::Power, Branch::Power, Branch::Power};
};

/// |s| at or below this counts as s = 0 when choosing the branch.
static constexpr double kSurfaceZero = 1e-9;

/// omega~ = omega - R~ omega_d, with R~ = relative_rotation(Q, Q_d).
Vec3 omega_error(const Vec3 &omega, const Mat3 &rel_rotation, const Vec3 &omega_d);

struct RhoResult {
	Vec3 value{Vec3::Zero()};
	BranchFlags branch{Branch::Power, Branch::Power, Branch::Power};
};

/// Sign-magnitude power sign(x) |x|^p.
double signed_power(double x, double p);

/**
 * Surface shaping term. Per component: the power branch
 * sign(q~_i) |q~_i|^(c1/c2) when the previous surface is zero or |q~_i| > epsilon,
 * otherwise the linear branch q~_i.
 */
RhoResult rho(const Vec3 &q_err, const Vec3 &surface_prev, const InnerGains &gains);

/// s = gamma1 rho(q~) + omega~
SlidingState sliding_surface(const Vec3 &q_err, const Vec3 &w_err, const InnerGains &gains,
			     const Vec3 &surface_prev);

/// s = gamma1 q~ + omega~, kept for diagnostics.
inline Vec3 linear_surface(const Vec3 &q_err, const Vec3 &w_err, const InnerGains &gains)
{
	return gains.gamma1 * q_err + w_err;
}

/// Componentwise sign (phi == 0) or saturation of s / phi to [-1, 1].
Vec3 smoothed_sign(const Vec3 &s, double phi);

/**
 * Time derivative of rho(q~) on the given branches. On the power branch the
 * magnitude entering |q~_i|^(c1/c2 - 1) is floored at epsilon, so the negative
 * exponent is never evaluated below the switching threshold.
 */
Vec3 surface_rate_term(const Vec3 &q_err, const Vec3 &q_err_dot, const BranchFlags &branch, const InnerGains &gains);

/// q~' from the error kinematics: (-1/2 q~' w~, 1/2 (q~0 w~ + [q~]x w~)).
Vec4 error_kinematics(const AttitudeError &err, const Vec3 &w_err);

struct TorqueInputs {
	AttitudeError error;           // canonical hemisphere
	Mat3 rel_rotation{Mat3::Identity()};
	Vec3 omega{Vec3::Zero()};
	Vec3 omega_d{Vec3::Zero()};
	Vec3 omega_d_dot{Vec3::Zero()};
	Vec3 omega_error{Vec3::Zero()};
};

/**
 * tau = -J([w~]x R~ w_d - R~ w_d') - [J w]x w - J gamma1 Phi - mu1 s - Lambda . sgn(s)
 *
 * with Phi from surface_rate_term() (or the product form when configured) and
 * sgn the boundary-layer sign. J is the controller's nominal inertia.
 */
Vec3 torque_control(const TorqueInputs &in, const SlidingState &sliding, const AdaptiveInnerState &adaptive,
		    const InnerGains &gains, const VehicleParams &params);

/// Lambda_hat_i += lambda |s| dt for every i.
AdaptiveInnerState update_lambda(const AdaptiveInnerState &adaptive, const Vec3 &surface, const InnerGains &gains,
				 double dt);

/// Sign of the scalar error rate. The printed error dynamics use +1/2 q~' w~;
/// the kinematics of conj(Q_d) * Q give -1/2 q~' w~.
enum class ScalarRateSign { Kinematic, Printed };

struct ErrorDerivatives {
	double scalar_rate{0.0};
	Vec3 vec_rate{Vec3::Zero()};
	Vec3 omega_error_rate{Vec3::Zero()};
};

/// Attitude error dynamics. Used as an independent propagation oracle in tests.
ErrorDerivatives attitude_error_dynamics(const AttitudeError &err, const Vec3 &w_err, const Vec3 &omega,
					 const Vec3 &omega_d, const Vec3 &omega_d_dot, const Mat3 &rel_rotation,
					 const Vec3 &torque, const VehicleParams &params,
					 ScalarRateSign sign = ScalarRateSign::Kinematic);

struct InnerStepResult {
	Vec3 torque{Vec3::Zero()};
	AdaptiveInnerState adaptive;    // after the update
	SlidingState sliding;
	AttitudeError error;            // canonical
	Vec3 omega_error{Vec3::Zero()};
};

/// One inner-loop tick: error, surface, torque (pre-update Lambda_hat), adaptation.
/// `sliding_prev` is the previous tick's surface and drives the branch choice.
InnerStepResult inner_step(const RigidBodyState &state, const AttitudeReference &reference,
			   const AdaptiveInnerState &adaptive, const SlidingState &sliding_prev, const InnerGains &gains,
			   const VehicleParams &params, double dt);

/// 0.5 s's
inline double attitude_lyapunov(const Vec3 &surface) { return 0.5 * surface.squaredNorm(); }

/**
 * Upper bound on |tau| from the triangle inequality over every term, given
 * bounds on |w|, |w_d|, |w_d'|, |w~| and the gain state. Holds for every
 * q~ in the closed unit ball because |rho(q~)| <= 1 componentwise and the
 * floored power-branch slope is at most (c1/c2) epsilon^(c1/c2 - 1).
 */
double torque_bound(double omega_max, double omega_d_max, double omega_d_dot_max, double omega_err_max,
		    double lambda_hat_max, const InnerGains &gains, const VehicleParams &params);

/**
 * Largest torque change when a single component crosses |q~_i| = epsilon with
 * everything else fixed: the surface jumps by gamma1 (epsilon^(c1/c2) - epsilon),
 * the rate term by |(c1/c2) epsilon^(c1/c2 - 1) - 1| |q~_i'|, and the switching
 * term by at most 2 Lambda_hat_i.
 */
double branch_jump_bound(double q_err_rate_max, double lambda_hat_max, const InnerGains &gains,
			 const VehicleParams &params);

} // namespace quadctl

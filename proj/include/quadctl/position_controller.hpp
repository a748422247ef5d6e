#pragma once

#include "quadctl/reference.hpp"
#include "quadctl/rigid_body.hpp"

#include <stdexcept>

namespace quadctl {

/// Raised when the commanded specific force cannot be realized by a thrust
/// along body -z with zero yaw.
class ControllerFault : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ThrustTooSmall : public ControllerFault {
public:
	using ControllerFault::ControllerFault;
};

class ExtractionSingular : public ControllerFault {
public:
	using ControllerFault::ControllerFault;
};

struct OuterGains {
	Vec3 theta{0.8, 0.5, 0.4};      // position gains
	Vec3 eta{2.0, 2.0, 200.0};      // adaptation rates
	double thrust_min_ratio{1e-3};  // thrust floor as a fraction of m g
	double radicand_epsilon{1e-6};  // q0d^2 floor

	void validate() const;
};

/// Adaptive velocity-damping estimates. Grow monotonically.
struct AdaptiveOuterState {
	Vec3 psi_hat{0.5, 0.5, 0.5};
};

struct OuterOutput {
	Vec3 force{Vec3::Zero()};       // commanded specific force F [m/s^2]
	double thrust{0.0};             // N
	UnitQuaternion attitude;        // Q_d, q3d = 0
};

inline Vec3 position_error(const Vec3 &position, const Vec3 &position_d) { return position - position_d; }

/// v_d = -theta . P~ + P_d'
Vec3 virtual_velocity(const Vec3 &position_error, const Vec3 &velocity_d, const OuterGains &gains);

/// F = theta^2 . P~ - psi_hat . v~ + P_d''
Vec3 virtual_force(const Vec3 &position_error, const Vec3 &velocity_error, const Vec3 &acceleration_d,
		   const AdaptiveOuterState &adaptive, const OuterGains &gains);

/// psi_hat += eta . v~^2 dt
AdaptiveOuterState update_psi(const AdaptiveOuterState &adaptive, const Vec3 &velocity_error, const OuterGains &gains,
			      double dt);

/**
 * Total thrust realizing specific force F:
 *
 *   thrust = m |(Fx, Fy, Fz - g)|
 *
 * The velocity equation with thrust along body -z reads
 * V' = g e_z - (thrust / m) R_Q e_z, so F - g e_z is what the rotor disc must
 * produce and its norm fixes the thrust.
 */
double thrust_magnitude(const Vec3 &force, const VehicleParams &params);

/**
 * Zero-yaw attitude whose thrust axis realizes F at the given thrust:
 *
 *   q0d = sqrt(1/2 + m (g - Fz) / (2 thrust))
 *   q1d =  m Fy / (2 thrust q0d)
 *   q2d = -m Fx / (2 thrust q0d)
 *   q3d = 0
 *
 * With Q = Q_d and this thrust, translational_deriv() returns exactly F.
 *
 * Throws ThrustTooSmall when thrust <= thrust_min_ratio m g and
 * ExtractionSingular when the q0d radicand is <= radicand_epsilon, i.e. the
 * commanded tilt approaches 180 deg.
 */
UnitQuaternion extract_attitude(const Vec3 &force, double thrust, const VehicleParams &params,
				const OuterGains &gains = {});

struct OuterStepResult {
	OuterOutput output;
	AdaptiveOuterState adaptive;    // after the update
	Vec3 position_error{Vec3::Zero()};
	Vec3 velocity_error{Vec3::Zero()};
	Vec3 velocity_d{Vec3::Zero()};
};

/// One outer-loop tick: errors, virtual velocity, velocity error, virtual
/// force (with the pre-update psi_hat), adaptation, thrust and attitude.
/// `params` are the controller's nominal parameters.
OuterStepResult outer_step(const RigidBodyState &state, const TrajectorySample &reference,
			   const AdaptiveOuterState &adaptive, const OuterGains &gains, const VehicleParams &params,
			   double dt);

/// 0.5 |P~|^2 + 0.5 |v~|^2
inline double position_lyapunov(const Vec3 &position_error, const Vec3 &velocity_error)
{
	return 0.5 * (position_error.squaredNorm() + velocity_error.squaredNorm());
}

} // namespace quadctl

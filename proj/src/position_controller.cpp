#include "quadctl/position_controller.hpp"

#include <cmath>
#include <sstream>

namespace quadctl {

void OuterGains::validate() const
{
	if (!(theta.minCoeff() > 0.0) || !(eta.minCoeff() > 0.0)) {
		throw std::invalid_argument("outer gains theta and eta must be strictly positive");
	}

	if (!(thrust_min_ratio > 0.0) || !(radicand_epsilon > 0.0)) {
		throw std::invalid_argument("outer guard thresholds must be strictly positive");
	}
}

Vec3 virtual_velocity(const Vec3 &position_error, const Vec3 &velocity_d, const OuterGains &gains)
{
	return -gains.theta.cwiseProduct(position_error) + velocity_d;
}

Vec3 virtual_force(const Vec3 &position_error, const Vec3 &velocity_error, const Vec3 &acceleration_d,
		   const AdaptiveOuterState &adaptive, const OuterGains &gains)
{
	return gains.theta.cwiseProduct(gains.theta).cwiseProduct(position_error)
	       - adaptive.psi_hat.cwiseProduct(velocity_error) + acceleration_d;
}

AdaptiveOuterState update_psi(const AdaptiveOuterState &adaptive, const Vec3 &velocity_error, const OuterGains &gains,
			      double dt)
{
	if (!(dt > 0.0)) {
		throw std::invalid_argument("adaptation step must be positive");
	}

	AdaptiveOuterState next = adaptive;
	for (int i = 0; i < 3; ++i) {
		next.psi_hat(i) += gains.eta(i) * velocity_error(i) * velocity_error(i) * dt;
	}

	return next;
}

double thrust_magnitude(const Vec3 &force, const VehicleParams &params)
{
	return params.mass * Vec3(force.x(), force.y(), force.z() - params.gravity).norm();
}

UnitQuaternion extract_attitude(const Vec3 &force, double thrust, const VehicleParams &params,
				const OuterGains &gains)
{
	const double thrust_min = gains.thrust_min_ratio * params.mass * params.gravity;

	if (!(thrust > thrust_min)) {
		std::ostringstream msg;
		msg << "thrust " << thrust << " N is below the extraction floor " << thrust_min << " N";
		throw ThrustTooSmall(msg.str());
	}

	const double k = params.mass / thrust;
	const double radicand = 0.5 + 0.5 * k * (params.gravity - force.z());

	if (!(radicand > gains.radicand_epsilon)) {
		std::ostringstream msg;
		msg << "commanded force (" << force.x() << ", " << force.y() << ", " << force.z() << ") requires a near-inverted attitude (q0d^2 = "
		    << radicand << ")";
		throw ExtractionSingular(msg.str());
	}

	const double q0 = std::sqrt(radicand);
	const double q1 = 0.5 * k * force.y() / q0;
	const double q2 = -0.5 * k * force.x() / q0;
	return UnitQuaternion::from_raw(q0, q1, q2, 0.0);
}

OuterStepResult outer_step(const RigidBodyState &state, const TrajectorySample &reference,
			   const AdaptiveOuterState &adaptive, const OuterGains &gains, const VehicleParams &params,
			   double dt)
{
	OuterStepResult r;
	r.position_error = position_error(state.position, reference.position);
	r.velocity_d = virtual_velocity(r.position_error, reference.velocity, gains);
	r.velocity_error = state.velocity - r.velocity_d;
	r.output.force = virtual_force(r.position_error, r.velocity_error, reference.acceleration, adaptive, gains);
	r.adaptive = update_psi(adaptive, r.velocity_error, gains, dt);
	r.output.thrust = thrust_magnitude(r.output.force, params);
	r.output.attitude = extract_attitude(r.output.force, r.output.thrust, params, gains);
	return r;
}

} // namespace quadctl

#include "quadctl/rigid_body.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace quadctl {

namespace {

using Packed = Eigen::Matrix<double, 13, 1>;

const char *target_name(ParamTarget target)
{
	switch (target) {
	case ParamTarget::Mass: return "m";
	case ParamTarget::J11: return "J11";
	case ParamTarget::J22: return "J22";
	case ParamTarget::J33: return "J33";
	}

	return "?";
}

Packed pack(const RigidBodyState &s)
{
	Packed x;
	x << s.position, s.velocity, s.attitude.coeffs(), s.omega;
	return x;
}

// Same equations as state_deriv(), evaluated on a raw quaternion so that
// intermediate RK stages need not be unit norm.
Packed packed_deriv(const Packed &x, const ControlOutput &u, const VehicleParams &p)
{
	const Vec4 q = x.segment<4>(6);
	const Vec3 omega = x.segment<3>(10);
	const double q0 = q(0), q1 = q(1), q2 = q(2), q3 = q(3);
	const double a = u.thrust / p.mass;

	Packed dx;
	dx.segment<3>(0) = x.segment<3>(3);
	dx(3) = -2.0 * a * (q0 * q2 + q1 * q3);
	dx(4) = -2.0 * a * (q2 * q3 - q0 * q1);
	dx(5) = a * (q1 * q1 + q2 * q2 - q0 * q0 - q3 * q3) + p.gravity;
	dx.segment<4>(6) = quat_kinematics_raw(q, omega);
	dx.segment<3>(10) = rotational_deriv(omega, u.torque, p.inertia);
	return dx;
}

} // namespace

void VehicleParams::validate() const
{
	if (!(mass > 0.0) || !std::isfinite(mass)) {
		throw InvalidSchedule("mass must be positive, got " + std::to_string(mass));
	}

	for (int i = 0; i < 3; ++i) {
		if (!(inertia(i) > 0.0) || !std::isfinite(inertia(i))) {
			throw InvalidSchedule("inertia J" + std::to_string(i + 1) + std::to_string(i + 1) +
					      " must be positive, got " + std::to_string(inertia(i)));
		}
	}

	if (!std::isfinite(gravity)) {
		throw InvalidSchedule("gravity must be finite");
	}
}

TranslationalDeriv translational_deriv(const RigidBodyState &state, double thrust, const VehicleParams &params)
{
	const Vec4 q = state.attitude.coeffs();
	const double q0 = q(0), q1 = q(1), q2 = q(2), q3 = q(3);
	const double a = thrust / params.mass;

	TranslationalDeriv d;
	d.position_rate = state.velocity;
	d.velocity_rate = {-2.0 * a * (q0 * q2 + q1 * q3),
			   -2.0 * a * (q2 * q3 - q0 * q1),
			   a * (q1 * q1 + q2 * q2 - q0 * q0 - q3 * q3) + params.gravity};
	return d;
}

Vec3 rotational_deriv(const Vec3 &omega, const Vec3 &torque, const Vec3 &inertia)
{
	const Vec3 jw = inertia.cwiseProduct(omega);
	return (jw.cross(omega) + torque).cwiseQuotient(inertia);
}

StateDeriv state_deriv(const RigidBodyState &state, const ControlOutput &control, const VehicleParams &params)
{
	const TranslationalDeriv t = translational_deriv(state, control.thrust, params);
	return {t.position_rate, t.velocity_rate, quat_kinematics(state.attitude, state.omega),
		rotational_deriv(state.omega, control.torque, params.inertia)};
}

double Perturbation::value(double t) const
{
	return std::visit(
		[t](const auto &p) -> double {
			using P = std::decay_t<decltype(p)>;

			if constexpr (std::is_same_v<P, ConstantOffset>) {
				return p.offset;

			} else if constexpr (std::is_same_v<P, Sinusoid>) {
				return p.amplitude * std::sin(2.0 * std::numbers::pi * p.frequency_hz * t + p.phase);

			} else {
				const double tc = std::clamp(t, p.start, std::max(p.start, p.end));
				return p.rate * (tc - p.start);
			}
		},
		profile);
}

ParamSchedule::ParamSchedule(VehicleParams nominal, std::vector<Perturbation> perturbations)
	: nominal_(nominal), perturbations_(std::move(perturbations))
{
	nominal_.validate();
}

VehicleParams ParamSchedule::params_at(double t) const
{
	VehicleParams p = nominal_;

	for (const Perturbation &d : perturbations_) {
		const double v = d.value(t);

		switch (d.target) {
		case ParamTarget::Mass: p.mass += v; break;
		case ParamTarget::J11: p.inertia(0) += v; break;
		case ParamTarget::J22: p.inertia(1) += v; break;
		case ParamTarget::J33: p.inertia(2) += v; break;
		}
	}

	try {
		p.validate();

	} catch (const InvalidSchedule &e) {
		std::ostringstream msg;
		msg << "parameter schedule at t=" << t << ": " << e.what();
		throw InvalidSchedule(msg.str());
	}

	return p;
}

void ParamSchedule::validate(double horizon, double sample_dt) const
{
	nominal_.validate();

	for (const Perturbation &d : perturbations_) {
		if (const auto *s = std::get_if<Sinusoid>(&d.profile); s && !(s->frequency_hz >= 0.0)) {
			throw InvalidSchedule(std::string("negative sinusoid frequency on ") + target_name(d.target));
		}
	}

	const auto n = static_cast<long>(std::ceil(horizon / sample_dt));

	for (long k = 0; k <= n; ++k) {
		params_at(std::min(horizon, static_cast<double>(k) * sample_dt));
	}
}

RigidBodyState step_rk4(const RigidBodyState &state, const ControlOutput &control, const ParamSchedule &schedule,
			double t, double dt)
{
	if (!(dt > 0.0 && dt <= kMaxStep)) {
		throw std::invalid_argument("integration step must lie in (0, 0.05] s");
	}

	const VehicleParams p0 = schedule.params_at(t);
	const VehicleParams ph = schedule.params_at(t + 0.5 * dt);
	const VehicleParams p1 = schedule.params_at(t + dt);

	const Packed x = pack(state);
	const Packed k1 = packed_deriv(x, control, p0);
	const Packed k2 = packed_deriv(x + 0.5 * dt * k1, control, ph);
	const Packed k3 = packed_deriv(x + 0.5 * dt * k2, control, ph);
	const Packed k4 = packed_deriv(x + dt * k3, control, p1);
	const Packed xn = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

	for (int i = 0; i < xn.size(); ++i) {
		if (!std::isfinite(xn(i)) || std::abs(xn(i)) > kDivergenceLimit) {
			std::ostringstream msg;
			msg << "state component " << i << " = " << xn(i) << " at t=" << t + dt;
			throw NumericalDivergence(msg.str());
		}
	}

	RigidBodyState next;
	next.position = xn.segment<3>(0);
	next.velocity = xn.segment<3>(3);

	try {
		next.attitude = UnitQuaternion::from_raw(xn.segment<4>(6));

	} catch (const DegenerateQuaternion &e) {
		throw NumericalDivergence(std::string("attitude collapsed: ") + e.what());
	}

	next.omega = xn.segment<3>(10);
	return next;
}

double rotational_energy(const Vec3 &omega, const Vec3 &inertia)
{
	return 0.5 * omega.dot(inertia.cwiseProduct(omega));
}

} // namespace quadctl

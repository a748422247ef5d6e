#pragma once

#include "quadctl/quaternion.hpp"

#include <stdexcept>
#include <variant>
#include <vector>

namespace quadctl {

class NumericalDivergence : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class InvalidSchedule : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Nominal vehicle defaults.
struct VehicleParams {
	double mass{3.5};              // kg
	Vec3 inertia{2.0, 2.0, 3.5};   // diagonal J11, J22, J33 [kg m^2]
	double gravity{9.8};           // m/s^2, along +e_z

	/// Throws InvalidSchedule unless mass and inertia are strictly positive and finite.
	void validate() const;
};

struct RigidBodyState {
	Vec3 position{Vec3::Zero()};   // inertial
	Vec3 velocity{Vec3::Zero()};   // inertial
	UnitQuaternion attitude;       // body -> inertial
	Vec3 omega{Vec3::Zero()};      // body rate

	bool operator==(const RigidBodyState &) const = default;
};

struct ControlOutput {
	double thrust{0.0};            // N, along -body z
	Vec3 torque{Vec3::Zero()};     // N m, body
};

struct TranslationalDeriv {
	Vec3 position_rate;
	Vec3 velocity_rate;
};

struct StateDeriv {
	Vec3 position_rate;
	Vec3 velocity_rate;
	Vec4 attitude_rate;
	Vec3 omega_rate;
};

TranslationalDeriv translational_deriv(const RigidBodyState &state, double thrust, const VehicleParams &params);

/// Euler's equations with diagonal inertia: J omega_dot = [J omega]x omega + tau.
Vec3 rotational_deriv(const Vec3 &omega, const Vec3 &torque, const Vec3 &inertia);

StateDeriv state_deriv(const RigidBodyState &state, const ControlOutput &control, const VehicleParams &params);

// Parameter uncertainty profiles, all in the units of the perturbed quantity.

struct ConstantOffset {
	double offset{0.0};
};

struct Sinusoid {
	double amplitude{0.0};
	double frequency_hz{0.0};
	double phase{0.0};
};

/// rate * (clamp(t, start, end) - start)
struct Ramp {
	double rate{0.0};
	double start{0.0};
	double end{0.0};
};

using PerturbationProfile = std::variant<ConstantOffset, Sinusoid, Ramp>;

enum class ParamTarget { Mass, J11, J22, J33 };

struct Perturbation {
	ParamTarget target{ParamTarget::Mass};
	PerturbationProfile profile;

	double value(double t) const;
};

class ParamSchedule {
public:
	ParamSchedule() = default;
	explicit ParamSchedule(VehicleParams nominal, std::vector<Perturbation> perturbations = {});

	/// Nominal plus every active perturbation. Throws InvalidSchedule on a non-positive value.
	VehicleParams params_at(double t) const;

	/// Samples [0, horizon] densely and throws InvalidSchedule if mass or inertia ever
	/// becomes non-positive.
	void validate(double horizon, double sample_dt = 1e-3) const;

	const VehicleParams &nominal() const { return nominal_; }
	const std::vector<Perturbation> &perturbations() const { return perturbations_; }

private:
	VehicleParams nominal_;
	std::vector<Perturbation> perturbations_;
};

inline VehicleParams params_at(const ParamSchedule &schedule, double t) { return schedule.params_at(t); }

static constexpr double kDivergenceLimit = 1e6;
static constexpr double kMaxStep = 0.05;

/**
 * Classical RK4 over the 13-dimensional state with the control held constant
 * over the step. Parameters are sampled at t, t + dt/2 and t + dt. The
 * attitude is renormalized after the step.
 *
 * Throws NumericalDivergence when any component leaves [-1e6, 1e6] or is not
 * finite, and std::invalid_argument for dt outside (0, 0.05].
 */
RigidBodyState step_rk4(const RigidBodyState &state, const ControlOutput &control, const ParamSchedule &schedule,
			double t, double dt);

/// 0.5 omega' J omega
double rotational_energy(const Vec3 &omega, const Vec3 &inertia);

} // namespace quadctl

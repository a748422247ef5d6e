#pragma once

#include "quadctl/quaternion.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace quadctl {

class NonTangentInput : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// Trajectory families. All are bounded and C2 on any finite horizon.

/// (r cos wt, r sin wt, -c t): climbs along -z at rate c.
struct Helix {
	double radius{1.0};
	double rate{0.2};      // rad/s
	double climb{0.05};    // m/s
};

/// Per-axis a_i sin(w_i t + phi_i).
struct Lissajous {
	Vec3 amplitude{Vec3::Zero()};
	Vec3 frequency{Vec3::Zero()};   // rad/s
	Vec3 phase{Vec3::Zero()};
};

struct HoverAt {
	Vec3 point{Vec3::Zero()};
};

/// Visits the points in order, spending smoothing_time on each leg with a
/// quintic blend (zero velocity and acceleration at every point), then holds
/// the last point.
struct WaypointSmooth {
	std::vector<Vec3> points;
	double smoothing_time{5.0};
};

using TrajectoryKind = std::variant<Helix, Lissajous, HoverAt, WaypointSmooth>;

struct TrajectorySpec {
	TrajectoryKind kind{HoverAt{}};
	Vec3 offset{Vec3::Zero()};
};

struct TrajectorySample {
	double t{0.0};
	Vec3 position{Vec3::Zero()};
	Vec3 velocity{Vec3::Zero()};
	Vec3 acceleration{Vec3::Zero()};
};

TrajectorySample sample(const TrajectorySpec &spec, double t);

/// Upper bounds on |P_d|, |P_d'| and |P_d''| over [0, horizon].
struct TrajectoryBounds {
	double position;
	double velocity;
	double acceleration;
};

TrajectoryBounds trajectory_bounds(const TrajectorySpec &spec, double horizon);

/// Throws std::invalid_argument for malformed specs (e.g. waypoint list empty).
void validate(const TrajectorySpec &spec);

struct AttitudeReference {
	UnitQuaternion attitude;
	Vec3 omega{Vec3::Zero()};        // desired body rate, desired-body frame
	Vec3 omega_dot{Vec3::Zero()};
};

static constexpr double kTangentTolerance = 1e-6;

/**
 * Inverts the quaternion kinematics: returns the body rate omega_d for which
 * quat_kinematics(q_d, omega_d) reproduces q_d_dot. Implemented as the
 * pseudo-inverse 2 vec(conj(q_d) * q_d_dot), exact on the tangent space.
 *
 * Throws NonTangentInput when |q_d' q_d_dot| > 1e-6.
 */
Vec3 desired_omega(const UnitQuaternion &q_d, const Vec4 &q_d_dot);

/// Central differences of a desired-attitude stream. Samples are aligned to
/// the hemisphere of qd_fn(t). Requires h in [1e-5, 1e-3].
AttitudeReference attitude_reference_stream(const std::function<UnitQuaternion(double)> &qd_fn, double t, double h);

/**
 * Causal version for a stream that is only known up to the present, e.g. the
 * outer loop's desired attitude. Each push() takes the newest sample (spaced
 * by the fixed period h) and returns omega_d and omega_d_dot from three-point
 * backward differences, falling back to lower order during start-up.
 */
class ReferenceDifferentiator {
public:
	explicit ReferenceDifferentiator(double period);

	AttitudeReference push(const UnitQuaternion &q_d);

	void reset();

	double period() const { return h_; }

private:
	double h_;
	int count_{0};
	Vec4 q_[3];          // newest first, hemisphere aligned
	Vec3 w_[3];
};

} // namespace quadctl

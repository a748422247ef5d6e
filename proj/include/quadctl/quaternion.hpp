#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace quadctl {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

class DegenerateQuaternion : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Cross-product matrix: skew(v) * w == v.cross(w).
Mat3 skew(const Vec3 &v);

/**
 * Unit quaternion Q = [q0, q] with q0 the scalar part.
 *
 * The rotation matrix of Q maps body-frame vectors into the inertial frame,
 * and products follow the Hamilton convention, so that
 * quat_to_rot(a * b) == quat_to_rot(a) * quat_to_rot(b).
 */
class UnitQuaternion {
public:
	UnitQuaternion() = default;

	static UnitQuaternion identity() { return {}; }

	/// Normalizes (w, x, y, z). Throws DegenerateQuaternion when the norm is <= 1e-12.
	static UnitQuaternion from_raw(const Vec4 &wxyz, bool canonical = false);
	static UnitQuaternion from_raw(double w, double x, double y, double z, bool canonical = false)
	{
		return from_raw(Vec4(w, x, y, z), canonical);
	}

	/// Rotation by `angle` radians about `axis` (need not be normalized).
	static UnitQuaternion from_axis_angle(const Vec3 &axis, double angle);

	double w() const { return w_; }
	const Vec3 &vec() const { return v_; }
	double x() const { return v_.x(); }
	double y() const { return v_.y(); }
	double z() const { return v_.z(); }

	Vec4 coeffs() const { return {w_, v_.x(), v_.y(), v_.z()}; }

	/// Same rotation, opposite hemisphere.
	UnitQuaternion operator-() const { return {-w_, -v_}; }

	bool operator==(const UnitQuaternion &) const = default;

private:
	friend UnitQuaternion quat_conj(const UnitQuaternion &q);

	UnitQuaternion(double w, const Vec3 &v) : w_(w), v_(v) {}

	double w_{1.0};
	Vec3 v_{Vec3::Zero()};
};

static constexpr double kDegenerateNorm = 1e-12;

UnitQuaternion quat_normalize(const Vec4 &raw, bool canonical = false);

/// Hamilton product, renormalized.
UnitQuaternion quat_mul(const UnitQuaternion &a, const UnitQuaternion &b);

inline UnitQuaternion operator*(const UnitQuaternion &a, const UnitQuaternion &b) { return quat_mul(a, b); }

/// Exact sign flip of the vector part, so conj(conj(Q)) == Q bit for bit.
UnitQuaternion quat_conj(const UnitQuaternion &q);

/// R_Q = (q0^2 - q'q) I + 2 q q' + 2 q0 [q]x
Mat3 quat_to_rot(const UnitQuaternion &q);

/**
 * Attitude error between the true attitude Q and the desired attitude Q_d:
 *
 *   scalar = q0 q0d + q_d' q
 *   vec    = q0d q - q0 q_d + [q]x q_d
 *
 * which equals conj(Q_d) * Q under the Hamilton product. Its rotation matrix
 * is therefore R_d' R; relative_rotation() returns the transpose.
 */
struct AttitudeError {
	double scalar{1.0};
	Vec3 vec{Vec3::Zero()};

	Vec4 coeffs() const { return {scalar, vec.x(), vec.y(), vec.z()}; }

	/// Flip onto the q0 >= 0 hemisphere (shortest rotation).
	AttitudeError canonical() const { return scalar < 0.0 ? AttitudeError{-scalar, -vec} : *this; }

	/// Rotation angle in [0, pi].
	double angle() const;
};

AttitudeError quat_error(const UnitQuaternion &q, const UnitQuaternion &q_d);

/// Rotation taking desired-body-frame vectors into the body frame: R' R_d.
/// Equal to quat_to_rot(quat_error(q, q_d))'.
Mat3 relative_rotation(const UnitQuaternion &q, const UnitQuaternion &q_d);

/// Quaternion rate for body angular velocity omega:
///   q0_dot = -1/2 q' omega,  q_dot = 1/2 (q0 omega + [q]x omega)
Vec4 quat_kinematics(const UnitQuaternion &q, const Vec3 &omega);

/// Same map applied to a raw (not necessarily unit) 4-vector; used inside integrator stages.
Vec4 quat_kinematics_raw(const Vec4 &q, const Vec3 &omega);

} // namespace quadctl

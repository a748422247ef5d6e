#include "quadctl/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace quadctl {

Mat3 skew(const Vec3 &v)
{
	Mat3 m;
	m << 0.0, -v.z(), v.y(),
	     v.z(), 0.0, -v.x(),
	     -v.y(), v.x(), 0.0;
	return m;
}

UnitQuaternion UnitQuaternion::from_raw(const Vec4 &wxyz, bool canonical)
{
	const double n = wxyz.norm();

	if (!(n > kDegenerateNorm)) {
		throw DegenerateQuaternion("quaternion norm " + std::to_string(n) + " is below 1e-12");
	}

	Vec4 u = wxyz / n;

	if (canonical && u(0) < 0.0) {
		u = -u;
	}

	return {u(0), u.tail<3>()};
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3 &axis, double angle)
{
	const double n = axis.norm();

	if (!(n > kDegenerateNorm)) {
		return identity();
	}

	const double half = 0.5 * angle;
	return {std::cos(half), std::sin(half) * axis / n};
}

UnitQuaternion quat_normalize(const Vec4 &raw, bool canonical)
{
	return UnitQuaternion::from_raw(raw, canonical);
}

UnitQuaternion quat_mul(const UnitQuaternion &a, const UnitQuaternion &b)
{
	const double w = a.w() * b.w() - a.vec().dot(b.vec());
	const Vec3 v = a.w() * b.vec() + b.w() * a.vec() + a.vec().cross(b.vec());
	return UnitQuaternion::from_raw(Vec4(w, v.x(), v.y(), v.z()));
}

UnitQuaternion quat_conj(const UnitQuaternion &q)
{
	return {q.w_, -q.v_};
}

Mat3 quat_to_rot(const UnitQuaternion &q)
{
	const double q0 = q.w();
	const Vec3 &v = q.vec();
	return (q0 * q0 - v.squaredNorm()) * Mat3::Identity() + 2.0 * v * v.transpose() + 2.0 * q0 * skew(v);
}

double AttitudeError::angle() const
{
	return 2.0 * std::acos(std::clamp(std::abs(scalar), 0.0, 1.0));
}

AttitudeError quat_error(const UnitQuaternion &q, const UnitQuaternion &q_d)
{
	AttitudeError e;
	e.scalar = q.w() * q_d.w() + q_d.vec().dot(q.vec());
	e.vec = q_d.w() * q.vec() - q.w() * q_d.vec() + skew(q.vec()) * q_d.vec();
	return e;
}

Mat3 relative_rotation(const UnitQuaternion &q, const UnitQuaternion &q_d)
{
	return quat_to_rot(q).transpose() * quat_to_rot(q_d);
}

Vec4 quat_kinematics_raw(const Vec4 &q, const Vec3 &omega)
{
	const double q0 = q(0);
	const Vec3 v = q.tail<3>();
	Vec4 dq;
	dq(0) = -0.5 * v.dot(omega);
	dq.tail<3>() = 0.5 * (q0 * omega + v.cross(omega));
	return dq;
}

Vec4 quat_kinematics(const UnitQuaternion &q, const Vec3 &omega)
{
	return quat_kinematics_raw(q.coeffs(), omega);
}

} // namespace quadctl

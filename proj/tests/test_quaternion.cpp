#include "quadctl/quaternion.hpp"

#include "test_support.hpp"

using namespace quadctl;
using namespace quadctl::test;

TEST_CASE("skew matches the cross product")
{
	CHECK(skew(Vec3::Zero()).isZero());
	CHECK(max_abs_diff(skew(Vec3(1, 0, 0)) * Vec3(0, 1, 0), Vec3(0, 0, 1)) == 0.0);
	CHECK(max_abs_diff(skew(Vec3(1, 2, 3)) * Vec3(4, 5, 6), Vec3(-3, 6, -3)) < 1e-15);

	for (int i = 0; i < 100; ++i) {
		const Vec3 v = random_vec(5.0);
		const Vec3 w = random_vec(5.0);
		CHECK(max_abs_diff(skew(v) * w, v.cross(w)) < 1e-12);
		CHECK(max_abs_diff(skew(v) * w, -(skew(w) * v)) < 1e-12);
		CHECK(max_abs_diff(skew(v).transpose(), -skew(v)) == 0.0);
	}
}

TEST_CASE("normalize")
{
	CHECK(quat_normalize(Vec4(2, 0, 0, 0)) == UnitQuaternion::identity());
	CHECK(max_abs_diff(quat_normalize(Vec4(1, 1, 1, 1)).coeffs(), Vec4(0.5, 0.5, 0.5, 0.5)) < 1e-15);
	CHECK_THROWS_AS(quat_normalize(Vec4(0, 0, 0, 1e-13)), DegenerateQuaternion);
	CHECK_THROWS_AS(UnitQuaternion::from_raw(0, 0, 0, 0), DegenerateQuaternion);

	SUBCASE("canonical flag only flips when asked")
	{
		const Vec4 raw(-0.5, 0.5, 0.5, 0.5);
		CHECK(quat_normalize(raw).w() == doctest::Approx(-0.5));
		CHECK(max_abs_diff(quat_normalize(raw, true).coeffs(), Vec4(0.5, -0.5, -0.5, -0.5)) < 1e-15);
	}

	for (int i = 0; i < 200; ++i) {
		const Vec4 raw = Vec4::Random() * 10.0;
		CHECK(std::abs(quat_normalize(raw).coeffs().norm() - 1.0) <= 1e-9);
	}
}

TEST_CASE("Hamilton product")
{
	const UnitQuaternion i = UnitQuaternion::from_raw(0, 1, 0, 0);
	const UnitQuaternion j = UnitQuaternion::from_raw(0, 0, 1, 0);
	const UnitQuaternion k = UnitQuaternion::from_raw(0, 0, 0, 1);

	CHECK(max_abs_diff((i * j).coeffs(), k.coeffs()) < 1e-15);
	CHECK(max_abs_diff((j * i).coeffs(), (-k).coeffs()) < 1e-15);

	for (int n = 0; n < 200; ++n) {
		const UnitQuaternion a = random_quat();
		const UnitQuaternion b = random_quat();
		const UnitQuaternion c = random_quat();

		CHECK(max_abs_diff((UnitQuaternion::identity() * a).coeffs(), a.coeffs()) < 1e-15);
		CHECK(max_abs_diff((a * quat_conj(a)).coeffs(), UnitQuaternion::identity().coeffs()) <= 1e-9);
		CHECK(max_abs_diff(((a * b) * c).coeffs(), (a * (b * c)).coeffs()) < 1e-12);
		CHECK(std::abs((a * b).coeffs().norm() - 1.0) <= 1e-9);
	}
}

TEST_CASE("conjugate")
{
	CHECK(quat_conj(UnitQuaternion::identity()) == UnitQuaternion::identity());
	const UnitQuaternion q = UnitQuaternion::from_raw(0.5, 0.5, 0.5, 0.5);
	CHECK(max_abs_diff(quat_conj(q).coeffs(), Vec4(0.5, -0.5, -0.5, -0.5)) < 1e-15);

	for (int n = 0; n < 100; ++n) {
		const UnitQuaternion a = random_quat();
		CHECK(quat_conj(quat_conj(a)) == a);
		CHECK(max_abs_diff(quat_to_rot(quat_conj(a)), quat_to_rot(a).transpose()) < 1e-12);
	}
}

TEST_CASE("rotation matrix")
{
	CHECK(max_abs_diff(quat_to_rot(UnitQuaternion::identity()), Mat3::Identity()) == 0.0);

	SUBCASE("90 degrees about z against Rodrigues")
	{
		const double h = std::sqrt(0.5);
		const Mat3 r = quat_to_rot(UnitQuaternion::from_raw(h, 0, 0, h));
		CHECK(max_abs_diff(r, rodrigues(Vec3::UnitZ(), std::numbers::pi / 2)) < 1e-15);
		CHECK(max_abs_diff(r * Vec3::UnitX(), Vec3::UnitY()) < 1e-15);
	}

	SUBCASE("axis-angle against Rodrigues")
	{
		for (int n = 0; n < 200; ++n) {
			const Vec3 axis = random_vec();
			const double angle = uniform(-4.0, 4.0);
			CHECK(max_abs_diff(quat_to_rot(UnitQuaternion::from_axis_angle(axis, angle)), rodrigues(axis, angle)) <
			      1e-12);
		}
	}

	SUBCASE("1000 random samples are proper rotations")
	{
		for (int n = 0; n < 1000; ++n) {
			const Mat3 r = quat_to_rot(random_quat());
			CHECK(max_abs_diff(r * r.transpose(), Mat3::Identity()) <= 1e-9);
			CHECK(std::abs(r.determinant() - 1.0) <= 1e-9);
		}
	}

	SUBCASE("product maps to matrix product")
	{
		for (int n = 0; n < 500; ++n) {
			const UnitQuaternion a = random_quat();
			const UnitQuaternion b = random_quat();
			CHECK(max_abs_diff(quat_to_rot(a * b), quat_to_rot(a) * quat_to_rot(b)) <= 1e-8);
		}
	}

	SUBCASE("double cover")
	{
		const UnitQuaternion a = random_quat();
		CHECK(max_abs_diff(quat_to_rot(-a), quat_to_rot(a)) < 1e-15);
	}
}

TEST_CASE("attitude error")
{
	SUBCASE("zero error")
	{
		for (int n = 0; n < 200; ++n) {
			const UnitQuaternion q = random_quat();
			const AttitudeError e = quat_error(q, q);
			CHECK(std::abs(std::abs(e.scalar) - 1.0) < 1e-12);
			CHECK(e.vec.norm() <= 1e-9);
		}
	}

	SUBCASE("identity reference returns the attitude itself")
	{
		const UnitQuaternion q = random_quat();
		const AttitudeError e = quat_error(q, UnitQuaternion::identity());
		CHECK(max_abs_diff(e.coeffs(), q.coeffs()) < 1e-15);
	}

	SUBCASE("180 degrees about x")
	{
		const UnitQuaternion qd = random_quat();
		const UnitQuaternion q = qd * UnitQuaternion::from_axis_angle(Vec3::UnitX(), std::numbers::pi);
		const AttitudeError e = quat_error(q, qd);
		CHECK(std::abs(e.scalar) < 1e-12);
		CHECK(e.vec.norm() == doctest::Approx(1.0).epsilon(1e-12));
		// Matrix oracle: the error rotation is a half turn, trace = -1.
		const Mat3 r_err = quat_to_rot(qd).transpose() * quat_to_rot(q);
		CHECK(r_err.trace() == doctest::Approx(-1.0).epsilon(1e-12));
	}

	SUBCASE("unit norm and matrix form")
	{
		for (int n = 0; n < 1000; ++n) {
			const UnitQuaternion q = random_quat();
			const UnitQuaternion qd = random_quat();
			const AttitudeError e = quat_error(q, qd);
			CHECK(std::abs(e.coeffs().norm() - 1.0) <= 1e-9);

			const Mat3 r = quat_to_rot(q);
			const Mat3 rd = quat_to_rot(qd);
			const Mat3 r_err = quat_to_rot(UnitQuaternion::from_raw(e.coeffs()));

			// The error composition is conj(Q_d) * Q, so its matrix is R_d' R.
			CHECK(max_abs_diff(r_err, rd.transpose() * r) < 1e-9);
			CHECK(max_abs_diff(relative_rotation(q, qd), r_err.transpose()) < 1e-12);
			CHECK(max_abs_diff(e.coeffs(), (quat_conj(qd) * q).coeffs()) < 1e-12);
		}
	}

	SUBCASE("R R_d' is not what the error formula produces")
	{
		// Locks the convention: the two only agree when R and R_d commute.
		const UnitQuaternion q = UnitQuaternion::from_axis_angle(Vec3::UnitX(), 0.7);
		const UnitQuaternion qd = UnitQuaternion::from_axis_angle(Vec3::UnitY(), 0.4);
		const Mat3 r_err = quat_to_rot(UnitQuaternion::from_raw(quat_error(q, qd).coeffs()));
		CHECK(max_abs_diff(r_err, quat_to_rot(q) * quat_to_rot(qd).transpose()) > 1e-2);
	}

	SUBCASE("canonical hemisphere and angle")
	{
		const AttitudeError e{-0.8, Vec3(0.6, 0, 0)};
		CHECK(e.canonical().scalar == doctest::Approx(0.8));
		CHECK(e.canonical().vec.x() == doctest::Approx(-0.6));
		CHECK(e.angle() == doctest::Approx(2.0 * std::acos(0.8)));
		CHECK(e.canonical().angle() == doctest::Approx(e.angle()));
	}
}

TEST_CASE("kinematics")
{
	CHECK(quat_kinematics(random_quat(), Vec3::Zero()).isZero());
	CHECK(max_abs_diff(quat_kinematics(UnitQuaternion::identity(), Vec3(0, 0, 2)), Vec4(0, 0, 0, 1)) == 0.0);

	for (int n = 0; n < 500; ++n) {
		const UnitQuaternion q = random_quat();
		const Vec4 qdot = quat_kinematics(q, random_vec(10.0));
		CHECK(std::abs(q.coeffs().dot(qdot)) < 1e-12);
	}

	SUBCASE("matches half the Hamilton product with (0, omega)")
	{
		const UnitQuaternion q = random_quat();
		const Vec3 w = random_vec(3.0);
		const Vec4 expected = 0.5 * Vec4(-q.vec().dot(w), 0, 0, 0) +
				      0.5 * (Vec4() << 0, q.w() * w + q.vec().cross(w)).finished();
		CHECK(max_abs_diff(quat_kinematics(q, w), expected) < 1e-15);
	}

	SUBCASE("exact exponential for a constant spin")
	{
		// Q(t) = Q0 * exp(omega t / 2); for omega = (0, 0, pi), one second is a half turn about z.
		const Vec3 w(0, 0, std::numbers::pi);
		const UnitQuaternion q0 = UnitQuaternion::identity();
		const double t = 1.0;
		const UnitQuaternion q1 = q0 * UnitQuaternion::from_axis_angle(w.normalized(), w.norm() * t);
		CHECK(max_abs_diff(quat_to_rot(q1), rodrigues(Vec3::UnitZ(), std::numbers::pi)) < 1e-12);

		// The exponential solves the kinematics: compare its derivative with a central difference.
		const double h = 1e-6;
		auto at = [&](double s) { return (q0 * UnitQuaternion::from_axis_angle(Vec3::UnitZ(), w.norm() * s)).coeffs(); };
		const Vec4 fd = (at(0.3 + h) - at(0.3 - h)) / (2 * h);
		const UnitQuaternion mid = UnitQuaternion::from_raw(at(0.3));
		CHECK(max_abs_diff(fd, quat_kinematics(mid, w)) < 1e-8);
	}

	SUBCASE("raw map agrees on unit input")
	{
		const UnitQuaternion q = random_quat();
		const Vec3 w = random_vec();
		CHECK(max_abs_diff(quat_kinematics_raw(q.coeffs(), w), quat_kinematics(q, w)) == 0.0);
	}
}

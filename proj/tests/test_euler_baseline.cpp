#include "quadctl/euler_baseline.hpp"

#include "test_support.hpp"

using namespace quadctl;
using namespace quadctl::test;

namespace {

const VehicleParams kTable{3.5, Vec3(2.0, 2.0, 3.5), 9.8};
const InnerGains kGains;

Mat3 zyx(double roll, double pitch, double yaw)
{
	return rodrigues(Vec3::UnitZ(), yaw) * rodrigues(Vec3::UnitY(), pitch) * rodrigues(Vec3::UnitX(), roll);
}

EulerReference hold(const EulerAngles &a)
{
	return EulerReference{a, Vec3::Zero(), Vec3::Zero()};
}

} // namespace

TEST_CASE("extraction")
{
	const EulerExtraction id = quat_to_euler(UnitQuaternion::identity());
	CHECK(id.angles.vec().isZero());
	CHECK_FALSE(id.gimbal_proximity);

	const EulerExtraction yaw = quat_to_euler(UnitQuaternion::from_axis_angle(Vec3::UnitZ(), std::numbers::pi / 2));
	CHECK(max_abs_diff(yaw.angles.vec(), Vec3(0, 0, std::numbers::pi / 2)) < 1e-12);

	const double near = 89.99 * std::numbers::pi / 180.0;
	const EulerExtraction lock = quat_to_euler(UnitQuaternion::from_axis_angle(Vec3::UnitY(), near));
	CHECK(lock.gimbal_proximity);
	CHECK(lock.angles.pitch == doctest::Approx(near).epsilon(1e-6));
	CHECK_FALSE(quat_to_euler(UnitQuaternion::from_axis_angle(Vec3::UnitY(), 1.5)).gimbal_proximity);

	SUBCASE("exact pitch 90 deg does not throw")
	{
		const EulerExtraction e = quat_to_euler(UnitQuaternion::from_axis_angle(Vec3::UnitY(), std::numbers::pi / 2));
		CHECK(e.gimbal_proximity);
		CHECK(e.angles.vec().allFinite());
	}

	SUBCASE("round trip against the matrix product")
	{
		for (int i = 0; i < 500; ++i) {
			const EulerAngles a{uniform(-3.1, 3.1), uniform(-1.5, 1.5), uniform(-3.1, 3.1)};
			const UnitQuaternion q = euler_to_quat(a);
			CHECK(max_abs_diff(quat_to_rot(q), zyx(a.roll, a.pitch, a.yaw)) < 1e-12);
			CHECK(max_abs_diff(quat_to_euler(q).angles.vec(), a.vec()) < 1e-9);
		}
	}

	CHECK(wrap_angle(3 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
	CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
	CHECK(wrap_angle(0.5) == 0.5);
}

TEST_CASE("rate matrix")
{
	SUBCASE("body rate from the rotation derivative")
	{
		// [omega]x = R' dR/dt along a path with constant angle rates.
		for (int i = 0; i < 100; ++i) {
			const Vec3 a0(uniform(-2, 2), uniform(-1.3, 1.3), uniform(-2, 2));
			const Vec3 rate = random_vec(1.0);
			const double h = 1e-6;
			auto r = [&](double t) {
				const Vec3 a = a0 + rate * t;
				return zyx(a.x(), a.y(), a.z());
			};
			const Mat3 w = r(0).transpose() * (r(h) - r(-h)) / (2 * h);
			const Vec3 omega(w(2, 1), w(0, 2), w(1, 0));
			const EulerAngles e = EulerAngles::from_vec(a0);
			CHECK(max_abs_diff(euler_rate_matrix(e) * rate, omega) < 1e-8);
			CHECK(max_abs_diff(euler_rate_matrix_inverse(e) * euler_rate_matrix(e), Mat3::Identity()) < 1e-9);

			const Mat3 fd = (euler_rate_matrix(EulerAngles::from_vec(a0 + h * rate)) -
					 euler_rate_matrix(EulerAngles::from_vec(a0 - h * rate))) / (2 * h);
			CHECK(max_abs_diff(euler_rate_matrix_derivative(e, rate), fd) < 1e-8);
		}
	}

	SUBCASE("condition number grows toward 90 deg pitch")
	{
		CHECK(euler_rate_condition({}) == doctest::Approx(1.0));
		double prev = 0.0;

		for (double deg = 0.0; deg <= 89.9; deg += 0.1) {
			const double c = euler_rate_condition({0.3, deg * std::numbers::pi / 180.0, -0.7});
			REQUIRE(c >= prev - 1e-9);
			prev = c;
		}

		CHECK(prev > 1e3);
	}
}

TEST_CASE("reference conversion")
{
	const EulerAngles a{0.2, -0.4, 1.0};
	const Vec3 rates(0.3, -0.1, 0.2);
	AttitudeReference ref;
	ref.attitude = euler_to_quat(a);
	ref.omega = euler_rate_matrix(a) * rates;
	const EulerReference e = euler_reference(ref);
	CHECK(max_abs_diff(e.angles.vec(), a.vec()) < 1e-12);
	CHECK(max_abs_diff(e.rates, rates) < 1e-12);
	// Constant body rate: W eta'' + W' eta' = 0.
	CHECK(max_abs_diff(euler_rate_matrix(a) * e.accelerations + euler_rate_matrix_derivative(a, rates) * rates,
			   Vec3::Zero()) < 1e-12);
}

TEST_CASE("torque law")
{
	SUBCASE("on the reference only feedforward and gyroscopic terms remain")
	{
		const EulerAngles a{0.1, 0.3, -0.5};
		RigidBodyState x;
		x.attitude = euler_to_quat(a);
		x.omega = Vec3(0.2, -0.3, 0.1);
		const Vec3 rates = euler_rate_matrix_inverse(a) * x.omega;
		const EulerStepResult r =
			euler_attitude_controller(x, EulerReference{a, rates, Vec3::Zero()}, {}, {}, kGains, kTable, 1e-3);
		const Vec3 J = kTable.inertia;
		const Vec3 expected = J.cwiseProduct(euler_rate_matrix_derivative(a, rates) * rates) -
				      J.cwiseProduct(x.omega).cross(x.omega);
		// Round-off in the angle error passes through |e|^(3/5), which amplifies it.
		CHECK(r.angle_error.norm() < 1e-12);
		CHECK(r.sliding.surface.norm() < 1e-7);
		CHECK(max_abs_diff(r.torque, expected) < 1e-6);
	}

	SUBCASE("at rest on the setpoint the torque vanishes")
	{
		RigidBodyState x;
		const EulerStepResult r = euler_attitude_controller(x, hold({}), {}, {}, kGains, kTable, 1e-3);
		CHECK(r.torque.norm() < 1e-15);
		CHECK(r.condition == doctest::Approx(1.0));
		CHECK_FALSE(r.gimbal_proximity);
	}

	SUBCASE("small single-axis tilt agrees with the quaternion law")
	{
		for (const Vec3 &axis : {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}) {
			for (double angle : {0.02, -0.05, 0.1}) {
				RigidBodyState x;
				x.attitude = UnitQuaternion::from_axis_angle(axis, angle);
				const EulerStepResult e = euler_attitude_controller(x, hold({}), {}, {}, kGains, kTable, 1e-3);
				const InnerStepResult q = inner_step(x, AttitudeReference{}, {}, {}, kGains, kTable, 1e-3);
				CHECK((e.torque - q.torque).norm() <= 0.1 * q.torque.norm());
			}
		}
	}
}

TEST_CASE("setpoints below 60 deg pitch converge")
{
	const ParamSchedule schedule(kTable);
	const double dt = 1e-3;

	for (const EulerAngles &target : {EulerAngles{0.5, 0.0, 0.0}, EulerAngles{0.0, 0.9, 0.0},
					  EulerAngles{-0.3, -1.0, 0.8}, EulerAngles{0.0, 0.0, 1.2}}) {
		RigidBodyState x;
		AdaptiveInnerState adaptive;
		SlidingState sliding;
		EulerStepResult r;

		for (int k = 0; k < 6000; ++k) {
			r = euler_attitude_controller(x, hold(target), adaptive, sliding, kGains, kTable, dt);
			adaptive = r.adaptive;
			sliding = r.sliding;
			x = step_rk4(x, {kTable.mass * kTable.gravity, r.torque}, schedule, k * dt, dt);
		}

		r = euler_attitude_controller(x, hold(target), adaptive, sliding, kGains, kTable, dt);
		CHECK(r.angle_error.norm() < 0.02);
	}
}

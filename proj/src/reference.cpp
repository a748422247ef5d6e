#include "quadctl/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace quadctl {

namespace {

// Quintic blend with s(0)=0, s(1)=1 and zero first/second derivative at both ends.
struct Blend {
	double s, ds, dds;
};

Blend min_jerk(double u)
{
	u = std::clamp(u, 0.0, 1.0);
	const double u2 = u * u, u3 = u2 * u;
	return {u3 * (10.0 - 15.0 * u + 6.0 * u2),
		30.0 * u2 * (1.0 - 2.0 * u + u2),
		60.0 * u * (1.0 - 3.0 * u + 2.0 * u2)};
}

// Max of |ds| and |dds| over [0, 1].
constexpr double kBlendMaxRate = 1.875;
constexpr double kBlendMaxAccel = 5.7735026918962582;  // 10 / sqrt(3)

TrajectorySample sample_kind(const Helix &h, double t)
{
	const double c = std::cos(h.rate * t), s = std::sin(h.rate * t);
	const double w2 = h.rate * h.rate;
	return {t, {h.radius * c, h.radius * s, -h.climb * t},
		{-h.radius * h.rate * s, h.radius * h.rate * c, -h.climb},
		{-h.radius * w2 * c, -h.radius * w2 * s, 0.0}};
}

TrajectorySample sample_kind(const Lissajous &l, double t)
{
	TrajectorySample out;
	out.t = t;

	for (int i = 0; i < 3; ++i) {
		const double arg = l.frequency(i) * t + l.phase(i);
		out.position(i) = l.amplitude(i) * std::sin(arg);
		out.velocity(i) = l.amplitude(i) * l.frequency(i) * std::cos(arg);
		out.acceleration(i) = -l.amplitude(i) * l.frequency(i) * l.frequency(i) * std::sin(arg);
	}

	return out;
}

TrajectorySample sample_kind(const HoverAt &h, double t)
{
	return {t, h.point, Vec3::Zero(), Vec3::Zero()};
}

TrajectorySample sample_kind(const WaypointSmooth &w, double t)
{
	TrajectorySample out;
	out.t = t;

	if (w.points.size() == 1 || t <= 0.0) {
		out.position = w.points.front();
		return out;
	}

	const double T = w.smoothing_time;
	const auto legs = w.points.size() - 1;
	const auto leg = static_cast<std::size_t>(t / T);

	if (leg >= legs) {
		out.position = w.points.back();
		return out;
	}

	const Vec3 delta = w.points[leg + 1] - w.points[leg];
	const Blend b = min_jerk((t - static_cast<double>(leg) * T) / T);
	out.position = w.points[leg] + b.s * delta;
	out.velocity = (b.ds / T) * delta;
	out.acceleration = (b.dds / (T * T)) * delta;
	return out;
}

Vec4 aligned(const Vec4 &q, const Vec4 &ref)
{
	return q.dot(ref) < 0.0 ? Vec4(-q) : q;
}

} // namespace

void validate(const TrajectorySpec &spec)
{
	if (const auto *w = std::get_if<WaypointSmooth>(&spec.kind)) {
		if (w->points.empty()) {
			throw std::invalid_argument("waypoint trajectory needs at least one point");
		}

		if (!(w->smoothing_time > 0.0)) {
			throw std::invalid_argument("waypoint smoothing time must be positive");
		}
	}

	if (!spec.offset.allFinite()) {
		throw std::invalid_argument("trajectory offset must be finite");
	}
}

TrajectorySample sample(const TrajectorySpec &spec, double t)
{
	TrajectorySample out = std::visit([t](const auto &k) { return sample_kind(k, t); }, spec.kind);
	out.position += spec.offset;
	return out;
}

TrajectoryBounds trajectory_bounds(const TrajectorySpec &spec, double horizon)
{
	const double off = spec.offset.norm();

	return std::visit(
		[&](const auto &k) -> TrajectoryBounds {
			using K = std::decay_t<decltype(k)>;

			if constexpr (std::is_same_v<K, Helix>) {
				const double w = std::abs(k.rate), c = std::abs(k.climb);
				return {off + std::abs(k.radius) + c * horizon, std::hypot(k.radius * w, c),
					std::abs(k.radius) * w * w};

			} else if constexpr (std::is_same_v<K, Lissajous>) {
				const Vec3 a = k.amplitude.cwiseAbs();
				const Vec3 w = k.frequency.cwiseAbs();
				return {off + a.norm(), a.cwiseProduct(w).norm(), a.cwiseProduct(w).cwiseProduct(w).norm()};

			} else if constexpr (std::is_same_v<K, HoverAt>) {
				return {off + k.point.norm(), 0.0, 0.0};

			} else {
				double pos = 0.0, leg = 0.0;

				for (std::size_t i = 0; i < k.points.size(); ++i) {
					pos = std::max(pos, k.points[i].norm());

					if (i + 1 < k.points.size()) {
						leg = std::max(leg, (k.points[i + 1] - k.points[i]).norm());
					}
				}

				const double T = k.smoothing_time;
				return {off + pos, kBlendMaxRate * leg / T, kBlendMaxAccel * leg / (T * T)};
			}
		},
		spec.kind);
}

Vec3 desired_omega(const UnitQuaternion &q_d, const Vec4 &q_d_dot)
{
	const double radial = q_d.coeffs().dot(q_d_dot);

	if (std::abs(radial) > kTangentTolerance) {
		std::ostringstream msg;
		msg << "desired quaternion rate is not tangent: Q_d'Q_d_dot = " << radial;
		throw NonTangentInput(msg.str());
	}

	// 2 vec(conj(q_d) * q_d_dot)
	const double w = q_d.w();
	const Vec3 &v = q_d.vec();
	const double dw = q_d_dot(0);
	const Vec3 dv = q_d_dot.tail<3>();
	return 2.0 * (w * dv - dw * v - v.cross(dv));
}

AttitudeReference attitude_reference_stream(const std::function<UnitQuaternion(double)> &qd_fn, double t, double h)
{
	if (!(h >= 1e-5 && h <= 1e-3)) {
		throw std::invalid_argument("finite-difference step must lie in [1e-5, 1e-3] s");
	}

	const UnitQuaternion q0 = qd_fn(t);
	const Vec4 ref = q0.coeffs();

	// Samples at t-2h .. t+2h, each aligned to its neighbour closer to t so a
	// sign flip in the stream never shows up as a jump.
	Vec4 s[5];
	s[2] = ref;

	for (int k = 1; k <= 2; ++k) {
		s[2 + k] = aligned(qd_fn(t + k * h).coeffs(), s[1 + k]);
		s[2 - k] = aligned(qd_fn(t - k * h).coeffs(), s[3 - k]);
	}

	auto omega_at = [&](int i) {
		const UnitQuaternion q = UnitQuaternion::from_raw(s[i]);
		Vec4 dq = (s[i + 1] - s[i - 1]) / (2.0 * h);
		dq -= q.coeffs().dot(dq) * q.coeffs();
		return desired_omega(q, dq);
	};

	AttitudeReference out;
	out.attitude = q0;
	out.omega = omega_at(2);
	out.omega_dot = (omega_at(3) - omega_at(1)) / (2.0 * h);
	return out;
}

ReferenceDifferentiator::ReferenceDifferentiator(double period) : h_(period)
{
	if (!(period > 0.0)) {
		throw std::invalid_argument("differentiator period must be positive");
	}
}

void ReferenceDifferentiator::reset()
{
	count_ = 0;
}

AttitudeReference ReferenceDifferentiator::push(const UnitQuaternion &q_d)
{
	Vec4 q = q_d.coeffs();

	if (count_ > 0) {
		q = aligned(q, q_[0]);
	}

	q_[2] = q_[1];
	q_[1] = q_[0];
	q_[0] = q;
	++count_;

	Vec4 dq = Vec4::Zero();

	if (count_ >= 3) {
		dq = (3.0 * q_[0] - 4.0 * q_[1] + q_[2]) / (2.0 * h_);

	} else if (count_ == 2) {
		dq = (q_[0] - q_[1]) / h_;
	}

	dq -= q.dot(dq) * q;

	w_[2] = w_[1];
	w_[1] = w_[0];
	w_[0] = desired_omega(UnitQuaternion::from_raw(q), dq);

	AttitudeReference out;
	out.attitude = q_d;
	out.omega = w_[0];

	if (count_ >= 4) {
		out.omega_dot = (3.0 * w_[0] - 4.0 * w_[1] + w_[2]) / (2.0 * h_);

	} else if (count_ >= 3) {
		out.omega_dot = (w_[0] - w_[1]) / h_;
	}

	return out;
}

} // namespace quadctl

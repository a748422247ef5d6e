#include "quadctl/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace quadctl {

namespace {

long divider(double period, double dt)
{
	return std::lround(period / dt);
}

bool is_multiple(double period, double dt)
{
	const double n = period / dt;
	return n >= 1.0 - 1e-9 && std::abs(n - std::round(n)) < 1e-6;
}

ParamTarget parse_target(const std::string &s)
{
	if (s == "m" || s == "mass") return ParamTarget::Mass;
	if (s == "J11") return ParamTarget::J11;
	if (s == "J22") return ParamTarget::J22;
	// J44 appears in some parameter lists; the model only has three axes.
	if (s == "J33" || s == "J44") return ParamTarget::J33;
	throw ConfigError("unknown perturbation target '" + s + "' (expected m, J11, J22 or J33)");
}

PerturbationProfile parse_profile(const KeyValueConfig &cfg, const std::string &p)
{
	const std::string kind = cfg.get_string(p + ".profile", "");

	if (kind == "constant") {
		return ConstantOffset{cfg.get_double(p + ".offset", 0.0)};
	}

	if (kind == "sinusoid") {
		return Sinusoid{cfg.get_double(p + ".amplitude", 0.0), cfg.get_double(p + ".frequency", 0.0),
				cfg.get_double(p + ".phase", 0.0)};
	}

	if (kind == "ramp") {
		return Ramp{cfg.get_double(p + ".rate", 0.0), cfg.get_double(p + ".start", 0.0),
			    cfg.get_double(p + ".end", 0.0)};
	}

	throw ConfigError(p + ".profile: expected constant, sinusoid or ramp, got '" + kind + "'");
}

TrajectorySpec parse_trajectory(const KeyValueConfig &cfg)
{
	TrajectorySpec spec;
	spec.offset = cfg.get_vec3("trajectory.offset", Vec3::Zero());
	const std::string kind = cfg.get_string("trajectory.kind", "hover");

	if (kind == "hover") {
		spec.kind = HoverAt{cfg.get_vec3("trajectory.point", Vec3::Zero())};

	} else if (kind == "helix") {
		Helix h;
		h.radius = cfg.get_double("trajectory.radius", h.radius);
		h.rate = cfg.get_double("trajectory.rate", h.rate);
		h.climb = cfg.get_double("trajectory.climb", h.climb);
		spec.kind = h;

	} else if (kind == "lissajous") {
		Lissajous l;
		l.amplitude = cfg.get_vec3("trajectory.amplitude", l.amplitude);
		l.frequency = cfg.get_vec3("trajectory.frequency", l.frequency);
		l.phase = cfg.get_vec3("trajectory.phase", l.phase);
		spec.kind = l;

	} else if (kind == "waypoints") {
		WaypointSmooth w;
		const std::vector<double> xs = cfg.get_list("trajectory.points");

		if (xs.empty() || xs.size() % 3 != 0) {
			throw ConfigError("trajectory.points: expected a non-empty list of x y z triples");
		}

		for (std::size_t i = 0; i < xs.size(); i += 3) {
			w.points.emplace_back(xs[i], xs[i + 1], xs[i + 2]);
		}

		w.smoothing_time = cfg.get_double("trajectory.smoothing_time", w.smoothing_time);
		spec.kind = w;

	} else {
		throw ConfigError("trajectory.kind: expected hover, helix, lissajous or waypoints, got '" + kind + "'");
	}

	return spec;
}

UnitQuaternion parse_attitude(const KeyValueConfig &cfg, const std::string &key)
{
	const auto raw = cfg.raw(key);

	if (!raw) {
		return UnitQuaternion::identity();
	}

	const std::vector<double> xs = parse_number_list(*raw);

	if (xs.size() != 4) {
		throw ConfigError(key + ": expected w, x, y, z");
	}

	try {
		return UnitQuaternion::from_raw(xs[0], xs[1], xs[2], xs[3]);

	} catch (const DegenerateQuaternion &e) {
		throw ConfigError(key + ": " + e.what());
	}
}

} // namespace

double PitchManeuver::pitch_at(double t) const
{
	if (!active(t)) {
		return 0.0;
	}

	const double s = std::sin(std::numbers::pi * (t - start) / duration);
	return peak * s * s;
}

long Scenario::outer_divider() const { return divider(1.0 / outer_rate, dt); }
long Scenario::inner_divider() const { return divider(1.0 / inner_rate, dt); }
long Scenario::total_steps() const { return std::lround(duration / dt); }

void Scenario::validate() const
{
	auto fail = [this](const std::string &what) { throw ScenarioError("scenario '" + name + "': " + what); };

	if (!(dt > 0.0 && dt <= kMaxStep)) fail("dt must lie in (0, 0.05]");
	if (!(duration > 0.0)) fail("duration must be positive");
	if (duration / dt > 1e7) fail("duration / dt exceeds 1e7 steps");
	if (!(outer_rate > 0.0) || !(inner_rate > 0.0)) fail("loop rates must be positive");
	if (inner_rate < outer_rate) fail("inner rate must be at least the outer rate");
	if (!is_multiple(1.0 / inner_rate, dt)) fail("inner period must be a whole number of dynamics steps");
	if (!is_multiple(1.0 / outer_rate, dt)) fail("outer period must be a whole number of dynamics steps");
	if (outer_divider() % inner_divider() != 0) fail("outer period must be a whole number of inner periods");
	if (!(position_jitter >= 0.0)) fail("initial.position_jitter must be non-negative");

	const bool finite = initial.position.allFinite() && initial.velocity.allFinite() && initial.omega.allFinite();
	if (!finite) fail("initial state must be finite");

	if (maneuver && !(maneuver->duration > 0.0)) fail("maneuver.duration must be positive");

	try {
		outer.validate();
		inner.validate();
		quadctl::validate(trajectory);
		schedule.validate(duration);

	} catch (const std::exception &e) {
		fail(e.what());
	}
}

Scenario scenario_from_config(const KeyValueConfig &cfg)
{
	Scenario sc;
	sc.name = cfg.get_string("name", sc.name);
	sc.duration = cfg.get_double("duration", sc.duration);
	sc.dt = cfg.get_double("dt", sc.dt);
	sc.outer_rate = cfg.get_double("rates.outer", sc.outer_rate);
	sc.inner_rate = cfg.get_double("rates.inner", sc.inner_rate);
	sc.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
	sc.output = cfg.get_string("output", "");

	const std::string controller = cfg.get_string("controller", "quaternion");

	if (controller == "quaternion") {
		sc.controller = ControllerKind::Quaternion;

	} else if (controller == "euler") {
		sc.controller = ControllerKind::Euler;

	} else {
		throw ConfigError("controller: expected quaternion or euler, got '" + controller + "'");
	}

	VehicleParams nominal;
	nominal.mass = cfg.get_double("vehicle.mass", nominal.mass);
	nominal.inertia = cfg.get_vec3("vehicle.inertia", nominal.inertia);
	nominal.gravity = cfg.get_double("vehicle.gravity", nominal.gravity);

	std::vector<Perturbation> perturbations;

	for (const std::string &label : cfg.children("perturbation")) {
		const std::string p = "perturbation." + label;
		perturbations.push_back({parse_target(cfg.get_string(p + ".target", "")), parse_profile(cfg, p)});
	}

	try {
		sc.schedule = ParamSchedule(nominal, std::move(perturbations));

	} catch (const InvalidSchedule &e) {
		throw ConfigError(e.what());
	}

	sc.trajectory = parse_trajectory(cfg);

	sc.initial.position = cfg.get_vec3("initial.position", sample(sc.trajectory, 0.0).position);
	sc.initial.velocity = cfg.get_vec3("initial.velocity", Vec3::Zero());
	sc.initial.attitude = parse_attitude(cfg, "initial.attitude");
	sc.initial.omega = cfg.get_vec3("initial.omega", Vec3::Zero());
	sc.position_jitter = cfg.get_double("initial.position_jitter", 0.0);

	sc.outer.theta = cfg.get_vec3("outer.theta", sc.outer.theta);
	sc.outer.eta = cfg.get_vec3("outer.eta", sc.outer.eta);
	sc.outer.thrust_min_ratio = cfg.get_double("outer.thrust_min_ratio", sc.outer.thrust_min_ratio);
	sc.outer.radicand_epsilon = cfg.get_double("outer.radicand_epsilon", sc.outer.radicand_epsilon);
	sc.outer_initial.psi_hat = cfg.get_vec3("outer.psi0", sc.outer_initial.psi_hat);

	sc.inner.gamma1 = cfg.get_double("inner.gamma1", sc.inner.gamma1);
	sc.inner.c1 = static_cast<int>(cfg.get_int("inner.c1", sc.inner.c1));
	sc.inner.c2 = static_cast<int>(cfg.get_int("inner.c2", sc.inner.c2));
	sc.inner.epsilon = cfg.get_double("inner.epsilon", sc.inner.epsilon);
	sc.inner.mu1 = cfg.get_double("inner.mu1", sc.inner.mu1);
	sc.inner.lambda = cfg.get_double("inner.lambda", sc.inner.lambda);
	sc.inner.phi = cfg.get_double("inner.phi", sc.inner.phi);
	sc.inner_initial.lambda_hat = cfg.get_vec3("inner.lambda0", sc.inner_initial.lambda_hat);

	const std::string derivative = cfg.get_string("inner.derivative", "consistent");

	if (derivative == "consistent") {
		sc.inner.derivative = SurfaceDerivative::Consistent;

	} else if (derivative == "literal") {
		sc.inner.derivative = SurfaceDerivative::LiteralProduct;

	} else {
		throw ConfigError("inner.derivative: expected consistent or literal, got '" + derivative + "'");
	}

	if (cfg.contains("maneuver.kind")) {
		const std::string kind = cfg.get_string("maneuver.kind", "");

		if (kind != "pitch") {
			throw ConfigError("maneuver.kind: only 'pitch' is supported, got '" + kind + "'");
		}

		PitchManeuver m;
		m.start = cfg.get_double("maneuver.start", m.start);
		m.duration = cfg.get_double("maneuver.duration", m.duration);
		m.peak = cfg.get_double("maneuver.peak_deg", 0.0) * std::numbers::pi / 180.0;
		sc.maneuver = m;
	}

	if (const auto unused = cfg.unused_keys(); !unused.empty()) {
		std::ostringstream msg;
		msg << cfg.origin() << ": unrecognized key";

		for (const auto &k : unused) {
			msg << " '" << k << "'";
		}

		throw ConfigError(msg.str());
	}

	return sc;
}

Scenario load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides)
{
	try {
		KeyValueConfig cfg = KeyValueConfig::load(path);

		for (const std::string &o : overrides) {
			cfg.set(o);
		}

		Scenario sc = scenario_from_config(cfg);
		sc.validate();
		return sc;

	} catch (const ConfigError &e) {
		throw ScenarioError(e.what());
	}
}

} // namespace quadctl

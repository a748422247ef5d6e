#pragma once

#include "quadctl/attitude_controller.hpp"
#include "quadctl/config.hpp"
#include "quadctl/position_controller.hpp"
#include "quadctl/reference.hpp"
#include "quadctl/rigid_body.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace quadctl {

class ScenarioError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

enum class ControllerKind { Quaternion, Euler };

/// Pitch excursion superimposed on the outer loop's desired attitude:
/// Q_d = Q_outer * pitch(peak sin^2(pi (t - start) / duration)) during the window.
/// The outer loop keeps commanding thrust but its psi_hat adaptation is held.
struct PitchManeuver {
	double start{10.0};
	double duration{4.0};
	double peak{0.0};      // rad

	bool active(double t) const { return t >= start && t <= start + duration; }
	double pitch_at(double t) const;
};

struct Scenario {
	std::string name{"scenario"};
	double duration{100.0};        // s
	double dt{1e-3};               // dynamics step
	double outer_rate{100.0};      // Hz
	double inner_rate{1000.0};     // Hz

	RigidBodyState initial;
	double position_jitter{0.0};   // m, uniform per axis, drawn from `seed`
	std::uint64_t seed{0};

	TrajectorySpec trajectory;
	ParamSchedule schedule;        // truth; controllers see schedule.nominal()
	ControllerKind controller{ControllerKind::Quaternion};

	OuterGains outer;
	AdaptiveOuterState outer_initial;
	InnerGains inner;
	AdaptiveInnerState inner_initial;

	std::optional<PitchManeuver> maneuver;

	std::filesystem::path output;  // log path; empty means <name>.csv

	long outer_divider() const;    // dynamics steps per outer tick
	long inner_divider() const;    // dynamics steps per inner tick
	long total_steps() const;

	/// Throws ScenarioError describing the first violated constraint.
	void validate() const;
};

/// Builds a scenario from configuration keys; every key must be recognized.
Scenario scenario_from_config(const KeyValueConfig &cfg);

Scenario load_scenario(const std::filesystem::path &path, const std::vector<std::string> &overrides = {});

} // namespace quadctl

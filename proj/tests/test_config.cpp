#include "quadctl/scenario.hpp"

#include "test_support.hpp"

#include <fstream>

using namespace quadctl;
using namespace quadctl::test;

namespace {

std::filesystem::path scenario_dir() { return std::filesystem::path(QUADCTL_SOURCE_DIR) / "scenarios"; }

} // namespace

TEST_CASE("key/value parsing")
{
	const KeyValueConfig cfg = KeyValueConfig::parse("# comment\n"
							 "name = demo   # trailing\n"
							 "\n"
							 "vehicle.inertia = 2, 2, 3.5\n"
							 "[trajectory]\n"
							 "kind = helix\n"
							 "radius = 1.5\n"
							 "[]\n"
							 "duration = 5\n");
	CHECK(cfg.get_string("name", "") == "demo");
	CHECK(cfg.get_vec3("vehicle.inertia", Vec3::Zero()) == Vec3(2, 2, 3.5));
	CHECK(cfg.get_string("trajectory.kind", "") == "helix");
	CHECK(cfg.get_double("trajectory.radius", 0.0) == 1.5);
	CHECK(cfg.get_double("duration", 0.0) == 5.0);
	CHECK(cfg.get_double("missing", 7.0) == 7.0);
	CHECK(cfg.get_int("duration", 0) == 5);
	CHECK(cfg.unused_keys().empty());

	SUBCASE("later assignments and overrides win")
	{
		KeyValueConfig c = KeyValueConfig::parse("a = 1\na = 2\n");
		CHECK(c.get_double("a", 0) == 2.0);
		c.set("a=3");
		CHECK(c.get_double("a", 0) == 3.0);
		CHECK_THROWS_AS(c.set("novalue"), ConfigError);
	}

	SUBCASE("children")
	{
		const KeyValueConfig c = KeyValueConfig::parse("perturbation.a.x = 1\nperturbation.b.y = 2\nother = 3\n");
		CHECK(c.children("perturbation") == std::vector<std::string>{"a", "b"});
	}

	SUBCASE("errors name the origin and line")
	{
		try {
			KeyValueConfig::parse("ok = 1\nbroken line\n", "demo.cfg");
			FAIL("expected a ConfigError");
		} catch (const ConfigError &e) {
			CHECK(std::string(e.what()).find("demo.cfg:2") != std::string::npos);
		}

		CHECK_THROWS_AS(KeyValueConfig::parse("[unterminated\n"), ConfigError);
		CHECK_THROWS_AS(KeyValueConfig::parse(" = 3\n"), ConfigError);
		CHECK_THROWS_AS(KeyValueConfig::parse("x = abc\n").get_double("x", 0), ConfigError);
		CHECK_THROWS_AS(KeyValueConfig::parse("x = 1, 2\n").get_vec3("x", Vec3::Zero()), ConfigError);
		CHECK_THROWS_AS(KeyValueConfig::parse("x = 1.5\n").get_int("x", 0), ConfigError);
		CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/file.cfg"), ConfigError);
	}

	CHECK(parse_number_list("1, 2.5,-3e-2") == std::vector<double>{1.0, 2.5, -3e-2});
}

TEST_CASE("scenario construction")
{
	SUBCASE("defaults")
	{
		const Scenario sc = scenario_from_config(KeyValueConfig::parse("name = x\n"));
		CHECK(sc.outer_divider() == 10);
		CHECK(sc.inner_divider() == 1);
		CHECK(sc.total_steps() == 100000);
		CHECK(sc.controller == ControllerKind::Quaternion);
		CHECK_FALSE(sc.maneuver.has_value());
		CHECK_NOTHROW(sc.validate());
	}

	SUBCASE("unknown keys are rejected")
	{
		CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse("durration = 3\n")), ConfigError);
		CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse("controller = pid\n")), ConfigError);
		CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse("trajectory.kind = spiral\n")), ConfigError);
	}

	SUBCASE("validation")
	{
		auto invalid = [](const std::string &text) {
			CHECK_THROWS_AS(scenario_from_config(KeyValueConfig::parse(text)).validate(), ScenarioError);
		};
		invalid("dt = 0\n");
		invalid("dt = 0.1\n");
		invalid("duration = -1\n");
		invalid("rates.inner = 50\n");
		invalid("rates.outer = 300\n");
		invalid("inner.c1 = 5\n");
		invalid("outer.theta = 0, 1, 1\n");
		invalid("[perturbation.a]\ntarget = J11\nprofile = ramp\nrate = -1\nstart = 0\nend = 100\n");
	}

	SUBCASE("shipped scenarios load")
	{
		for (const auto &entry : std::filesystem::directory_iterator(scenario_dir())) {
			CAPTURE(entry.path().string());
			CHECK_NOTHROW(load_scenario(entry.path()));
		}

		const Scenario flip = load_scenario(scenario_dir() / "pitch_flip_euler.cfg");
		CHECK(flip.controller == ControllerKind::Euler);
		REQUIRE(flip.maneuver.has_value());
		CHECK(flip.maneuver->peak == doctest::Approx(120.0 * std::numbers::pi / 180.0));
	}

	SUBCASE("overrides")
	{
		const Scenario sc = load_scenario(scenario_dir() / "hover.cfg", {"duration=2", "inner.mu1=4"});
		CHECK(sc.duration == 2.0);
		CHECK(sc.inner.mu1 == 4.0);
		CHECK_THROWS_AS(load_scenario(scenario_dir() / "hover.cfg", {"bogus=1"}), ScenarioError);
		CHECK_THROWS_AS(load_scenario(scenario_dir() / "hover.cfg", {"dt=1"}), ScenarioError);
	}
}

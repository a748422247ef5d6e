#pragma once

#include "quadctl/quaternion.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadctl {

class ConfigError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/**
 * Flat key/value configuration.
 *
 *   # comment
 *   name = helix_perturbed
 *   vehicle.inertia = 2, 2, 3.5
 *   [trajectory]          # prefixes following keys with "trajectory."
 *   kind = helix
 *
 * Later assignments override earlier ones. Every key must be consumed by the
 * reader; leftovers are reported by unused_keys().
 */
class KeyValueConfig {
public:
	static KeyValueConfig parse(const std::string &text, const std::string &origin = "<string>");
	static KeyValueConfig load(const std::filesystem::path &path);

	/// Applies "key=value".
	void set(const std::string &assignment);
	void set(const std::string &key, const std::string &value);

	bool contains(const std::string &key) const;

	std::optional<std::string> raw(const std::string &key) const;

	std::string get_string(const std::string &key, const std::string &fallback) const;
	double get_double(const std::string &key, double fallback) const;
	long get_int(const std::string &key, long fallback) const;
	Vec3 get_vec3(const std::string &key, const Vec3 &fallback) const;
	std::vector<double> get_list(const std::string &key) const;

	/// Distinct labels directly below `prefix`, e.g. "a" and "b" for "perturbation.a.x", "perturbation.b.y".
	std::vector<std::string> children(const std::string &prefix) const;

	std::vector<std::string> unused_keys() const;

	const std::string &origin() const { return origin_; }

private:
	std::string origin_;
	std::map<std::string, std::string> values_;
	mutable std::set<std::string> used_;
};

std::vector<double> parse_number_list(const std::string &text);

} // namespace quadctl

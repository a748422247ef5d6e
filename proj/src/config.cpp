#include "quadctl/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace quadctl {

namespace {

std::string trim(std::string_view s)
{
	const auto b = s.find_first_not_of(" \t\r\n");

	if (b == std::string_view::npos) {
		return {};
	}

	const auto e = s.find_last_not_of(" \t\r\n");
	return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string &text, const std::string &what)
{
	double v = 0.0;
	const char *first = text.data();
	const char *last = first + text.size();
	const auto [ptr, ec] = std::from_chars(first, last, v);

	if (ec != std::errc() || ptr != last) {
		throw ConfigError(what + ": expected a number, got '" + text + "'");
	}

	return v;
}

} // namespace

std::vector<double> parse_number_list(const std::string &text)
{
	std::string normalized = text;
	std::replace(normalized.begin(), normalized.end(), ',', ' ');
	std::replace(normalized.begin(), normalized.end(), ';', ' ');

	std::istringstream in(normalized);
	std::vector<double> out;
	std::string token;

	while (in >> token) {
		out.push_back(parse_double(token, "list '" + text + "'"));
	}

	return out;
}

KeyValueConfig KeyValueConfig::parse(const std::string &text, const std::string &origin)
{
	KeyValueConfig cfg;
	cfg.origin_ = origin;

	std::istringstream in(text);
	std::string line;
	std::string section;
	int lineno = 0;

	while (std::getline(in, line)) {
		++lineno;

		if (const auto hash = line.find('#'); hash != std::string::npos) {
			line.erase(hash);
		}

		const std::string s = trim(line);

		if (s.empty()) {
			continue;
		}

		if (s.front() == '[') {
			if (s.back() != ']') {
				throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
			}

			section = trim(std::string_view(s).substr(1, s.size() - 2));
			continue;
		}

		const auto eq = s.find('=');

		if (eq == std::string::npos) {
			throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
		}

		const std::string key = trim(std::string_view(s).substr(0, eq));

		if (key.empty()) {
			throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
		}

		cfg.values_[section.empty() ? key : section + "." + key] = trim(std::string_view(s).substr(eq + 1));
	}

	return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path &path)
{
	std::ifstream in(path);

	if (!in) {
		throw ConfigError("cannot open scenario file " + path.string());
	}

	std::ostringstream buf;
	buf << in.rdbuf();
	return parse(buf.str(), path.string());
}

void KeyValueConfig::set(const std::string &assignment)
{
	const auto eq = assignment.find('=');

	if (eq == std::string::npos) {
		throw ConfigError("override '" + assignment + "' is not of the form key=value");
	}

	set(trim(std::string_view(assignment).substr(0, eq)), trim(std::string_view(assignment).substr(eq + 1)));
}

void KeyValueConfig::set(const std::string &key, const std::string &value)
{
	if (key.empty()) {
		throw ConfigError("empty configuration key");
	}

	values_[key] = value;
}

bool KeyValueConfig::contains(const std::string &key) const
{
	return values_.count(key) != 0;
}

std::optional<std::string> KeyValueConfig::raw(const std::string &key) const
{
	const auto it = values_.find(key);

	if (it == values_.end()) {
		return std::nullopt;
	}

	used_.insert(key);
	return it->second;
}

std::string KeyValueConfig::get_string(const std::string &key, const std::string &fallback) const
{
	return raw(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string &key, double fallback) const
{
	const auto v = raw(key);
	return v ? parse_double(*v, origin_ + ": " + key) : fallback;
}

long KeyValueConfig::get_int(const std::string &key, long fallback) const
{
	const auto v = raw(key);

	if (!v) {
		return fallback;
	}

	long out = 0;
	const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);

	if (ec != std::errc() || ptr != v->data() + v->size()) {
		throw ConfigError(origin_ + ": " + key + ": expected an integer, got '" + *v + "'");
	}

	return out;
}

Vec3 KeyValueConfig::get_vec3(const std::string &key, const Vec3 &fallback) const
{
	const auto v = raw(key);

	if (!v) {
		return fallback;
	}

	const std::vector<double> xs = parse_number_list(*v);

	if (xs.size() != 3) {
		throw ConfigError(origin_ + ": " + key + ": expected 3 numbers, got " + std::to_string(xs.size()));
	}

	return {xs[0], xs[1], xs[2]};
}

std::vector<double> KeyValueConfig::get_list(const std::string &key) const
{
	const auto v = raw(key);
	return v ? parse_number_list(*v) : std::vector<double>{};
}

std::vector<std::string> KeyValueConfig::children(const std::string &prefix) const
{
	std::vector<std::string> out;
	const std::string p = prefix + ".";

	for (const auto &[key, value] : values_) {
		if (key.rfind(p, 0) != 0) {
			continue;
		}

		const std::string rest = key.substr(p.size());
		const std::string label = rest.substr(0, rest.find('.'));

		if (std::find(out.begin(), out.end(), label) == out.end()) {
			out.push_back(label);
		}
	}

	return out;
}

std::vector<std::string> KeyValueConfig::unused_keys() const
{
	std::vector<std::string> out;

	for (const auto &[key, value] : values_) {
		if (!used_.count(key)) {
			out.push_back(key);
		}
	}

	return out;
}

} // namespace quadctl

#include "quadctl/log.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

namespace quadctl {

namespace {

using Row = std::array<double, kLogColumns.size()>;

template <int N, typename V>
void put(Row &row, std::size_t &i, const V &v)
{
	for (int k = 0; k < N; ++k) {
		row[i++] = v(k);
	}
}

template <int N, typename V>
void take(const Row &row, std::size_t &i, V &v)
{
	for (int k = 0; k < N; ++k) {
		v(k) = row[i++];
	}
}

int as_flag(double v)
{
	return static_cast<int>(std::lround(v));
}

} // namespace

Row to_row(const LogRecord &r)
{
	Row row{};
	std::size_t i = 0;
	row[i++] = r.t;
	put<3>(row, i, r.position);
	put<3>(row, i, r.velocity);
	put<4>(row, i, r.attitude);
	put<3>(row, i, r.omega);
	put<3>(row, i, r.position_d);
	put<4>(row, i, r.attitude_d);
	put<3>(row, i, r.omega_d);
	put<3>(row, i, r.position_error);
	put<3>(row, i, r.velocity_error);
	put<4>(row, i, r.attitude_error);
	put<3>(row, i, r.omega_error);
	row[i++] = r.thrust;
	put<3>(row, i, r.torque);
	put<3>(row, i, r.psi_hat);
	put<3>(row, i, r.lambda_hat);
	put<3>(row, i, r.surface);
	row[i++] = r.v_pos;
	row[i++] = r.v_att;
	row[i++] = r.mass;
	put<3>(row, i, r.inertia);

	for (int b : r.branch) {
		row[i++] = b;
	}

	row[i++] = r.gimbal_flag;
	return row;
}

LogRecord from_row(const Row &row)
{
	LogRecord r;
	std::size_t i = 0;
	r.t = row[i++];
	take<3>(row, i, r.position);
	take<3>(row, i, r.velocity);
	take<4>(row, i, r.attitude);
	take<3>(row, i, r.omega);
	take<3>(row, i, r.position_d);
	take<4>(row, i, r.attitude_d);
	take<3>(row, i, r.omega_d);
	take<3>(row, i, r.position_error);
	take<3>(row, i, r.velocity_error);
	take<4>(row, i, r.attitude_error);
	take<3>(row, i, r.omega_error);
	r.thrust = row[i++];
	take<3>(row, i, r.torque);
	take<3>(row, i, r.psi_hat);
	take<3>(row, i, r.lambda_hat);
	take<3>(row, i, r.surface);
	r.v_pos = row[i++];
	r.v_att = row[i++];
	r.mass = row[i++];
	take<3>(row, i, r.inertia);

	for (int &b : r.branch) {
		b = as_flag(row[i++]);
	}

	r.gimbal_flag = as_flag(row[i++]);
	return r;
}

std::string log_header()
{
	std::string h;

	for (std::size_t i = 0; i < kLogColumns.size(); ++i) {
		if (i) {
			h += ',';
		}

		h += kLogColumns[i];
	}

	return h;
}

void write_log(const std::vector<LogRecord> &log, const std::filesystem::path &path)
{
	std::ofstream out(path, std::ios::binary | std::ios::trunc);

	if (!out) {
		throw LogIoError("cannot open " + path.string() + " for writing");
	}

	out << log_header() << '\n';

	std::string line;
	char buf[32];

	for (const LogRecord &r : log) {
		line.clear();
		const Row row = to_row(r);

		for (std::size_t i = 0; i < row.size(); ++i) {
			if (i) {
				line += ',';
			}

			const auto res = std::to_chars(buf, buf + sizeof(buf), row[i]);
			line.append(buf, res.ptr);
		}

		line += '\n';
		out << line;
	}

	if (!out) {
		throw LogIoError("write failed for " + path.string());
	}
}

std::vector<LogRecord> read_log(const std::filesystem::path &path)
{
	std::ifstream in(path, std::ios::binary);

	if (!in) {
		throw LogIoError("cannot open " + path.string());
	}

	std::string line;

	if (!std::getline(in, line)) {
		throw LogIoError(path.string() + ": missing header");
	}

	if (!line.empty() && line.back() == '\r') {
		line.pop_back();
	}

	if (line != log_header()) {
		throw LogIoError(path.string() + ": header does not match the log schema");
	}

	std::vector<LogRecord> log;
	std::size_t lineno = 1;

	while (std::getline(in, line)) {
		++lineno;

		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}

		if (line.empty()) {
			continue;
		}

		Row row{};
		const char *p = line.data();
		const char *end = p + line.size();

		for (std::size_t i = 0; i < row.size(); ++i) {
			const auto res = std::from_chars(p, end, row[i]);
			const bool last = i + 1 == row.size();

			if (res.ec != std::errc() || (last ? res.ptr != end : (res.ptr == end || *res.ptr != ','))) {
				throw LogIoError(path.string() + ":" + std::to_string(lineno) + ": malformed field " +
						 std::string(kLogColumns[i]));
			}

			p = res.ptr + 1;
		}

		log.push_back(from_row(row));
	}

	return log;
}

} // namespace quadctl

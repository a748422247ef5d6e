#pragma once

#include "quadctl/quaternion.hpp"

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quadctl {

class LogIoError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// One row per outer-loop tick.
struct LogRecord {
	double t{0.0};

	Vec3 position{Vec3::Zero()};
	Vec3 velocity{Vec3::Zero()};
	Vec4 attitude{1.0, 0.0, 0.0, 0.0};
	Vec3 omega{Vec3::Zero()};

	Vec3 position_d{Vec3::Zero()};
	Vec4 attitude_d{1.0, 0.0, 0.0, 0.0};
	Vec3 omega_d{Vec3::Zero()};

	Vec3 position_error{Vec3::Zero()};
	Vec3 velocity_error{Vec3::Zero()};
	Vec4 attitude_error{1.0, 0.0, 0.0, 0.0};   // canonical, scalar first
	Vec3 omega_error{Vec3::Zero()};

	double thrust{0.0};
	Vec3 torque{Vec3::Zero()};

	Vec3 psi_hat{Vec3::Zero()};
	Vec3 lambda_hat{Vec3::Zero()};
	Vec3 surface{Vec3::Zero()};

	double v_pos{0.0};
	double v_att{0.0};

	double mass{0.0};
	Vec3 inertia{Vec3::Zero()};

	std::array<int, 3> branch{0, 0, 0};   // 0 power, 1 linear
	int gimbal_flag{0};

	bool operator==(const LogRecord &) const = default;
};

inline constexpr auto kLogColumns = std::to_array<std::string_view>({
	"t", "px", "py", "pz", "vx", "vy", "vz", "q0", "q1", "q2", "q3", "wx", "wy", "wz", "pdx", "pdy",
	"pdz", "q0d", "q1d", "q2d", "q3d", "wdx", "wdy", "wdz", "epx", "epy", "epz", "evx", "evy", "evz",
	"eq0", "eq1", "eq2", "eq3", "ewx", "ewy", "ewz", "thrust", "tau1", "tau2", "tau3", "psix", "psiy",
	"psiz", "lam1", "lam2", "lam3", "s1", "s2", "s3", "Vpos", "Vatt", "m", "J11", "J22", "J33",
	"branch1", "branch2", "branch3", "gimbal_flag"});

/// Field values in column order.
std::array<double, kLogColumns.size()> to_row(const LogRecord &r);
LogRecord from_row(const std::array<double, kLogColumns.size()> &row);

/// CSV with the fixed header; numbers use the shortest round-trip representation.
void write_log(const std::vector<LogRecord> &log, const std::filesystem::path &path);
std::vector<LogRecord> read_log(const std::filesystem::path &path);

std::string log_header();

} // namespace quadctl

// Command-line front end: run, sweep, metrics, compare.

#include "quadctl/simulation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInvalid = 2, kDiverged = 3 };

json to_json(const quadctl::Metrics &m)
{
	return {
		{"position_rmse", m.position_rmse},
		{"position_rmse_full", m.position_rmse_full},
		{"position_rmse_final", m.position_rmse_final},
		{"attitude_rmse", m.attitude_rmse},
		{"attitude_rmse_full", m.attitude_rmse_full},
		{"attitude_rmse_final", m.attitude_rmse_final},
		{"peak_attitude_error", m.peak_attitude_error},
		{"settling_time", m.settling_time},
		{"settled", m.settled},
		{"torque_effort", m.torque_effort},
		{"thrust_effort", m.thrust_effort},
		{"chattering_index", m.chattering_index},
		{"max_thrust", m.max_thrust},
		{"diverged", m.diverged},
		{"final_window", m.final_window},
	};
}

struct RunOutcome {
	std::string name;
	int code{kOk};
	std::string message;
	quadctl::Metrics metrics;
};

RunOutcome run_one(const fs::path &file, const fs::path &out_dir, const std::vector<std::string> &overrides)
{
	RunOutcome out;
	out.name = file.stem().string();
	quadctl::Scenario sc;

	try {
		sc = quadctl::load_scenario(file, overrides);

	} catch (const quadctl::ScenarioError &e) {
		out.code = kInvalid;
		out.message = e.what();
		return out;
	}

	out.name = sc.name;
	const auto start = std::chrono::steady_clock::now();
	const quadctl::RunResult result = quadctl::run_scenario(sc);
	const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

	fs::create_directories(out_dir);
	const fs::path log_path = out_dir / (sc.output.empty() ? fs::path(sc.name + ".csv") : sc.output);
	fs::path metrics_path = log_path;
	metrics_path.replace_extension(".metrics.json");

	quadctl::write_log(result.log, log_path);

	json doc = to_json(result.metrics);
	doc["scenario"] = sc.name;
	doc["status"] = result.status == quadctl::RunStatus::Completed ? "completed" : "diverged";
	doc["failure"] = result.failure;
	doc["records"] = result.log.size();
	doc["end_time"] = result.log.back().t;

	std::ofstream(metrics_path) << std::setw(2) << doc << '\n';

	out.metrics = result.metrics;
	out.code = result.metrics.diverged ? kDiverged : kOk;
	std::ostringstream msg;
	msg << log_path.string() << " (" << std::fixed << std::setprecision(1) << elapsed << " s)";

	if (!result.failure.empty()) {
		msg << ": " << result.failure;
	}

	out.message = msg.str();
	return out;
}

void print_summary(const RunOutcome &o)
{
	if (o.code == kInvalid) {
		std::cerr << o.name << ": invalid scenario: " << o.message << '\n';
		return;
	}

	std::cout << std::left << std::setw(28) << o.name << std::right << std::scientific << std::setprecision(3)
		  << " pos_rmse_final " << o.metrics.position_rmse_final << "  att_rmse_final "
		  << o.metrics.attitude_rmse_final << "  peak_att " << o.metrics.peak_attitude_error
		  << (o.metrics.diverged ? "  DIVERGED" : "") << "  -> " << o.message << '\n';
}

int cmd_run(const std::string &file, const std::string &out_dir, const std::vector<std::string> &overrides)
{
	const RunOutcome o = run_one(file, out_dir, overrides);
	print_summary(o);
	return o.code;
}

int cmd_sweep(const std::string &dir, const std::string &out_dir, unsigned jobs)
{
	std::vector<fs::path> files;

	for (const auto &entry : fs::directory_iterator(dir)) {
		if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
			files.push_back(entry.path());
		}
	}

	std::sort(files.begin(), files.end());

	if (files.empty()) {
		std::cerr << dir << ": no .cfg scenario files\n";
		return kInvalid;
	}

	jobs = std::max(1u, jobs);
	std::vector<RunOutcome> outcomes(files.size());

	// Runs share nothing; each future owns one scenario and its output files.
	for (std::size_t begin = 0; begin < files.size(); begin += jobs) {
		std::vector<std::future<RunOutcome>> batch;
		const std::size_t end = std::min(files.size(), begin + jobs);

		for (std::size_t i = begin; i < end; ++i) {
			batch.push_back(std::async(std::launch::async, run_one, files[i], fs::path(out_dir),
						   std::vector<std::string>{}));
		}

		for (std::size_t i = begin; i < end; ++i) {
			outcomes[i] = batch[i - begin].get();
		}
	}

	int code = kOk;

	for (const RunOutcome &o : outcomes) {
		print_summary(o);
		code = std::max(code, o.code == kInvalid ? kInvalid : o.code);
	}

	return code;
}

int cmd_metrics(const std::string &file, double window)
{
	const auto log = quadctl::read_log(file);
	std::cout << std::setw(2) << to_json(quadctl::compute_metrics(log, window)) << '\n';
	return kOk;
}

int cmd_compare(const std::string &a, const std::string &b, double window)
{
	const json ma = to_json(quadctl::compute_metrics(quadctl::read_log(a), window));
	const json mb = to_json(quadctl::compute_metrics(quadctl::read_log(b), window));

	std::cout << std::left << std::setw(22) << "metric" << std::right << std::setw(14) << "A" << std::setw(14) << "B"
		  << std::setw(12) << "B/A" << '\n';

	for (const auto &[key, va] : ma.items()) {
		const json &vb = mb.at(key);
		std::cout << std::left << std::setw(22) << key << std::right;

		if (va.is_boolean()) {
			std::cout << std::setw(14) << (va.get<bool>() ? "true" : "false") << std::setw(14)
				  << (vb.get<bool>() ? "true" : "false") << '\n';
			continue;
		}

		const double x = va.get<double>();
		const double y = vb.get<double>();
		std::cout << std::scientific << std::setprecision(4) << std::setw(14) << x << std::setw(14) << y;

		if (x != 0.0) {
			std::cout << std::fixed << std::setprecision(3) << std::setw(12) << y / x;
		}

		std::cout << '\n';
	}

	return kOk;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Cascaded quadrotor controller simulator"};
	app.require_subcommand(1);

	std::string scenario_file;
	std::string out_dir = "out";
	std::vector<std::string> overrides;
	auto *run = app.add_subcommand("run", "Run one scenario file");
	run->add_option("scenario", scenario_file, "Scenario file")->required()->check(CLI::ExistingFile);
	run->add_option("--out", out_dir, "Output directory");
	run->add_option("--override", overrides, "key=value applied after the file");

	std::string sweep_dir;
	unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
	auto *sweep = app.add_subcommand("sweep", "Run every .cfg file in a directory");
	sweep->add_option("dir", sweep_dir, "Scenario directory")->required()->check(CLI::ExistingDirectory);
	sweep->add_option("--out", out_dir, "Output directory");
	sweep->add_option("--jobs", jobs, "Scenarios run in parallel");

	std::string log_file;
	double window = 10.0;
	auto *metrics = app.add_subcommand("metrics", "Print metrics of a log as JSON");
	metrics->add_option("log", log_file, "Log CSV")->required()->check(CLI::ExistingFile);
	metrics->add_option("--window", window, "Final window length in s");

	std::string log_a;
	std::string log_b;
	auto *compare = app.add_subcommand("compare", "Compare the metrics of two logs");
	compare->add_option("a", log_a, "First log CSV")->required()->check(CLI::ExistingFile);
	compare->add_option("b", log_b, "Second log CSV")->required()->check(CLI::ExistingFile);
	compare->add_option("--window", window, "Final window length in s");

	try {
		app.parse(argc, argv);

	} catch (const CLI::ParseError &e) {
		return app.exit(e) == 0 ? kOk : kInvalid;
	}

	try {
		if (*run) return cmd_run(scenario_file, out_dir, overrides);
		if (*sweep) return cmd_sweep(sweep_dir, out_dir, jobs);
		if (*metrics) return cmd_metrics(log_file, window);
		if (*compare) return cmd_compare(log_a, log_b, window);

	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << '\n';
		return kFailure;
	}

	return kOk;
}

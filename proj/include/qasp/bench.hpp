#pragma once

#include <qasp/backend.hpp>
#include <qasp/encoders.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qasp {

struct BenchInstance {
	std::string name;
	std::string domain;
	std::filesystem::path file;
	std::map<std::string, std::int64_t> consts;
	Mode mode = Mode::Conformant;
	int max_horizon = 1;
	/// Known minimal horizon; nothing when there is no plan up to max_horizon.
	std::optional<int> expect;
};

/// Reads `manifest.json` of a suite directory. File paths are relative to it.
std::vector<BenchInstance> load_suite(const std::filesystem::path& dir);

PlanningDescription load_description(const BenchInstance& inst);

struct BenchOptions {
	Backend backend;
	std::chrono::milliseconds timeout{60000};
	int jobs = 1;
};

struct BenchResult {
	std::string name;
	std::string domain;
	Mode mode = Mode::Conformant;
	bool finished = false;
	bool timeout = false;
	std::string error;
	std::optional<int> horizon;
	std::string plan;
	double seconds = 0;
	/// The answer agrees with the manifest (always true without an expectation).
	bool as_expected = false;
};

/// Every instance runs in a child process that is killed at the timeout;
/// up to `jobs` children run at once. Results keep the manifest order.
std::vector<BenchResult> run_suite(const std::vector<BenchInstance>& suite, const BenchOptions& opts);
BenchResult run_instance(const BenchInstance& inst, const Backend& backend);

struct DomainRow {
	std::string domain;
	int instances = 0;
	int solved = 0;
	int timeouts = 0;
	double avg_seconds = 0;
};

std::vector<DomainRow> summarize(const std::vector<BenchResult>& results);
std::string format_table(const std::vector<DomainRow>& rows);
/// One `key=value` line per instance and per domain.
std::string format_records(const std::vector<BenchResult>& results, const std::vector<DomainRow>& rows);

/// The answer of the encoding for horizons 1..max_horizon under a backend.
std::vector<bool> answers(const BenchInstance& inst, const Backend& backend);

} // namespace qasp

#include <qasp/bench.hpp>
#include <qasp/error.hpp>

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace qasp;

namespace {

std::filesystem::path scratch_suite(const std::string& name, const std::string& manifest) {
	auto dir = std::filesystem::temp_directory_path() / ("qasp-bench-" + name);
	std::filesystem::create_directories(dir);
	std::ofstream(dir / "manifest.json") << manifest;
	return dir;
}

BenchInstance find(const std::vector<BenchInstance>& suite, const std::string& name) {
	for (const auto& i : suite) {
		if (i.name == name) { return i; }
	}
	FAIL("no instance " << name);
	return {};
}

} // namespace

TEST_CASE("bundled suite manifest", "[bench]") {
	auto suite = load_suite(QASP_DATA_DIR);
	REQUIRE(suite.size() == 16);
	auto ringu = find(suite, "ringu-k2");
	REQUIRE(ringu.mode == Mode::Conformant);
	REQUIRE(ringu.expect == 5);
	REQUIRE(ringu.consts.at("k") == 2);
	REQUIRE_FALSE(find(suite, "robot-r2-occupied-conformant").expect);
	for (const auto& i : suite) { REQUIRE(std::filesystem::exists(i.file)); }
}

TEST_CASE("manifest errors", "[bench]") {
	REQUIRE_THROWS_AS(load_suite("/nonexistent-suite"), InvalidInput);
	REQUIRE_THROWS_AS(load_suite(scratch_suite("garbled", "{ not json")), InvalidInput);
	REQUIRE_THROWS_AS(load_suite(scratch_suite("nofield", R"({"instances": [{"name": "x"}]})")), InvalidInput);
	auto bad_mode = R"({"instances": [{"name": "x", "domain": "d", "file": "f", "mode": "reactive", "max_horizon": 2}]})";
	REQUIRE_THROWS_AS(load_suite(scratch_suite("badmode", bad_mode)), InvalidInput);
	auto bad_horizon = R"({"instances": [{"name": "x", "domain": "d", "file": "f", "mode": "classical", "max_horizon": 0}]})";
	REQUIRE_THROWS_AS(load_suite(scratch_suite("badhorizon", bad_horizon)), InvalidInput);
}

TEST_CASE("empty suite gives an empty table", "[bench]") {
	auto suite = load_suite(scratch_suite("empty", R"({"instances": []})"));
	REQUIRE(suite.empty());
	auto results = run_suite(suite, {});
	REQUIRE(results.empty());
	REQUIRE(summarize(results).empty());
	REQUIRE(format_records(results, {}).empty());
}

TEST_CASE("suite runs keep manifest order and aggregate per domain", "[bench]") {
	auto all = load_suite(QASP_DATA_DIR);
	std::vector<BenchInstance> suite{find(all, "robot-r2-classical"), find(all, "domino-k3"), find(all, "robot-r2-occupied-conformant")};
	BenchOptions opts;
	opts.jobs = 2;
	auto results = run_suite(suite, opts);
	REQUIRE(results.size() == 3);
	REQUIRE(results[0].name == "robot-r2-classical");
	REQUIRE(results[0].horizon == 2);
	REQUIRE(results[0].plan == "go; sweep");
	REQUIRE(results[1].plan == "knock(1)");
	REQUIRE_FALSE(results[2].horizon);
	for (const auto& r : results) {
		REQUIRE(r.finished);
		REQUIRE(r.as_expected);
		REQUIRE_FALSE(r.timeout);
	}
	auto rows = summarize(results);
	REQUIRE(rows.size() == 2);
	REQUIRE(rows[0].domain == "robot");
	REQUIRE(rows[0].instances == 2);
	REQUIRE(rows[0].solved == 2);
	auto records = format_records(results, rows);
	REQUIRE(records.find("name=robot-r2-classical domain=robot mode=classical status=sat horizon=2 expected=yes") != std::string::npos);
	REQUIRE(records.find("name=robot-r2-occupied-conformant domain=robot mode=conformant status=unsat expected=yes") != std::string::npos);
}

TEST_CASE("instances are killed at the timeout", "[bench]") {
	auto slow = find(load_suite(QASP_DATA_DIR), "bt-p4-t2");
	BenchOptions opts;
	opts.backend.kind = BackendKind::Oracle;
	opts.timeout = std::chrono::milliseconds(50);
	auto results = run_suite({slow}, opts);
	REQUIRE(results[0].timeout);
	REQUIRE_FALSE(results[0].finished);
	REQUIRE(results[0].seconds < 5);
	REQUIRE(summarize(results)[0].timeouts == 1);
}

TEST_CASE("errors are reported per instance", "[bench]") {
	BenchInstance missing{"missing", "none", "/nonexistent.desc", {}, Mode::Classical, 2, std::nullopt};
	auto r = run_instance(missing, {});
	REQUIRE_FALSE(r.finished);
	REQUIRE_FALSE(r.error.empty());
	REQUIRE(summarize({r})[0].solved == 0);
}

TEST_CASE("per-horizon answers agree between oracle and translation", "[bench]") {
	auto all = load_suite(QASP_DATA_DIR);
	Backend oracle;
	oracle.kind = BackendKind::Oracle;
	for (const char* name : {"robot-r2-conformant", "robot-r2-occupied-conditional", "domino-k3", "bt-p2-t2"}) {
		auto inst = find(all, name);
		auto a = answers(inst, {});
		REQUIRE(a == answers(inst, oracle));
		// the minimal horizon is the first satisfiable one
		REQUIRE(static_cast<int>(std::find(a.begin(), a.end(), true) - a.begin()) + 1 == *inst.expect);
	}
}

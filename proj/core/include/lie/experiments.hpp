#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lie {

// resolved knobs for one scenario run.  params carries only numeric knobs;
// the backend is a name string because a scenario may construct several.
struct ScenarioConfig {
    std::string scenario;
    std::string backend;                  // empty = scenario default
    std::map<std::string, double> params; // validated per scenario schema
    std::uint64_t seed = 0;
    std::string out_dir;                  // empty = compute only, write nothing
    std::vector<std::string> emit;        // subset of {json, csv, svg}; empty = all
};

struct Metric {
    std::string name;
    std::string value;    // preformatted: integers plain, doubles %.17g
    std::string units;
    std::string context;  // tolerance / interpretation note
};

struct RunReport {
    int schema_version = 1;
    std::string scenario;
    std::string backend;
    std::map<std::string, double> resolved_params;
    std::uint64_t seed = 0;
    int thread_count = 1;
    std::vector<Metric> metrics;
    bool truncated = false;  // any budget clipped an intermediate set
    bool complete = true;    // false when a budget stopped the scenario early
    double wall_ms = 0.0;    // recorded in the json report only, never in metrics csv
    std::vector<std::string> artifacts;  // files written, relative to out_dir
};

const std::vector<std::string> &scenario_names();

// runs one scenario; writes report.json / metrics.csv / plot artifacts into
// cfg.out_dir (honoring cfg.emit) when out_dir is nonempty.  on budget
// exhaustion the partial report is still written, then the error propagates.
RunReport run_scenario(const ScenarioConfig &cfg);

// deterministic metric-table bytes: reruns with the same config and seed
// produce identical output (wall-clock never appears here)
std::string metrics_csv(const RunReport &r);

std::string report_json(const RunReport &r);
RunReport load_report(const std::string &json_path);

// aligned CSV across reports of one scenario family; UsageError on an empty
// list or mixed scenarios
std::string compare_reports(const std::vector<RunReport> &reports);

}  // namespace lie

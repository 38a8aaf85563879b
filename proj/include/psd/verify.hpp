#pragma once

#include "psd/psdistrib.hpp"
#include "psd/transforms.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace psd::verify {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024u;

struct Check {
    std::string name;
    double expected = 0.0;
    double observed = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string source;  // identity being checked
};

struct PSGridSizes {
    int linePanels = 16;
    int lineOrder = 16;
    int diskRadial = 48;
    int diskAngular = 96;

    PSGrids grids() const;
};

struct GridSizes {
    FourierConfig fourier;
    PSGridSizes ps;
    KNGrids kn;
};

enum class Format { Json, Csv, Svg };

struct SuiteConfig {
    std::string suite = "all";
    std::map<std::string, double> tolerances;  // per-check overrides
    std::uint64_t seed = kDefaultSeed;
    GridSizes grids;
    std::filesystem::path outputPath = ".";
    std::set<Format> formats{Format::Json};

    void validate() const;
};

// Tags accepted by run_suite.
const std::vector<std::string>& suite_names();

struct Report {
    int schemaVersion = kSchemaVersion;
    std::string suite;
    std::uint64_t seed = kDefaultSeed;
    nlohmann::json config;
    std::vector<Check> checks;
    // plot data: name -> (x, y) points
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double wallTime = 0.0;  // kept out of the JSON so reports are reproducible

    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0; }
};

Report run_suite(const SuiteConfig& cfg);

// Writes report.json (always), spectral.csv and the SVG plots when their
// data is present and the format is requested. Throws ConfigError on an
// unwritable path.
std::vector<std::filesystem::path> emit_artifacts(const Report& report, const SuiteConfig& cfg);

// Parse a JSON config; errors name the path and line.
SuiteConfig load_config(const std::filesystem::path& path);
SuiteConfig config_from_json(const nlohmann::json& j, const std::string& origin = "<json>");
nlohmann::json to_json(const SuiteConfig& cfg);
nlohmann::json to_json(const Report& report);

// Acceptance criteria 1..12.
struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    double budget = 0.0;  // runtime budget in seconds, 0 = none
    bool pass = false;
};

inline constexpr int kCriteria = 12;
CriterionResult run_criterion(int id, const SuiteConfig& cfg);

// Shared plot data.
std::vector<std::pair<double, double>> refinement_series(const SuiteConfig& cfg);

std::string svg_line_plot(const std::string& title, const std::string& xLabel, const std::string& yLabel,
                          const std::vector<std::pair<double, double>>& pts, bool logY);

}  // namespace psd::verify

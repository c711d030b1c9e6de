#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "majorize/catalysis.hpp"
#include "majorize/certifier.hpp"
#include "majorize/experiment.hpp"
#include "majorize/feasibility.hpp"
#include "majorize/power_universal.hpp"
#include "majorize/thermal.hpp"

namespace majorize {

using json = nlohmann::json;

// {"labels": [...], "columns": [[...], ...]}; labels optional.
Experiment experiment_from_json(const json& j);
json experiment_to_json(const Experiment& P);

// Header row of labels, then one row per outcome.
Experiment experiment_from_csv(const std::string& text);
std::string experiment_to_csv(const Experiment& P);

std::string read_text(const std::string& path);  // "-" reads stdin
// CSV when the path ends in .csv, JSON otherwise.
Experiment load_experiment(const std::string& path);

// Sorted keys, 17 significant digits, infinities as the strings "inf"/"-inf".
std::string stable_dump(const json& j, int indent = 2);
std::string format_double(double x);

json number_or_inf(double x);
double parse_extended(const json& j);

json to_json(const GridSpec& g);
json to_json(const Check& c);
json to_json(const CertReport& r);
json to_json(const FeasibilityResult& r, std::size_t max_dense = 1'000'000);
json to_json(const CatalystSearchResult& r, std::size_t max_dense = 4096);
json to_json(const PowerUniversalReport& r);
json to_json(const ThermalVerdict& v);

}  // namespace majorize

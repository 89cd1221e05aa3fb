#pragma once

// JSON for scenarios, scenes and run records.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "driver.hpp"

namespace desing {

using json = nlohmann::ordered_json;

struct Scenario {
    std::string name;
    std::vector<std::string> variables;
    std::vector<std::string> x_factors;
    struct Boundary {
        std::string poly;
        unsigned birth_year = 0;
    };
    std::vector<Boundary> boundary;
    std::vector<Point> probe_points;
    Algorithm algorithm = Algorithm::C;
    unsigned max_years = 16;
    std::string description;
};

Point parse_point(const json& j, std::size_t n);

json point_json(const Point& p);

Scenario scenario_from_json(const json& j);

json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);

Scene scene_of(const Scenario& sc);

// ---------------------------------------------------------------------------
// Scenes.

json shear_json(const Shear& s, const std::vector<std::string>& names);

Shear shear_from_json(const json& j, const std::vector<std::string>& names);

json scene_to_json(const Scene& s);

BlowupTag parse_tag(const std::string& t);

Scene scene_from_json(const json& j);

// ---------------------------------------------------------------------------
// Run records.

json run_to_json(const RunResult& r, const std::string& name);

/// Human-readable trace in the table layout.
std::string run_table(const RunResult& r);

} // namespace desing

#include "desing/io.hpp"

namespace desing {

Point parse_point(const json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) throw InputError("probe point must be an array of " + std::to_string(n) + " numbers");
    Point p;
    for (const auto& v : j) {
        if (v.is_number_integer()) p.push_back(Rat(v.get<long>()));
        else if (v.is_string()) p.push_back(parse_rat(v.get<std::string>()));
        else throw InputError("probe coordinates must be integers or rational strings");
    }
    return p;
}

json point_json(const Point& p) {
    json a = json::array();
    for (const auto& r : p) a.push_back(to_string(r));
    return a;
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    try {
        s.name = j.value("name", std::string("scenario"));
        s.description = j.value("description", std::string());
        s.variables = j.at("variables").get<std::vector<std::string>>();
        s.x_factors = j.at("x_factors").get<std::vector<std::string>>();
        if (j.contains("boundary"))
            for (const auto& b : j.at("boundary")) {
                if (b.is_string()) s.boundary.push_back({b.get<std::string>(), 0});
                else s.boundary.push_back({b.at("poly").get<std::string>(), b.value("birth_year", 0u)});
            }
        if (j.contains("probe_points"))
            for (const auto& p : j.at("probe_points")) s.probe_points.push_back(parse_point(p, s.variables.size()));
        if (j.contains("algorithm")) s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        if (j.value("variant", false)) s.algorithm = Algorithm::CVariant;
        s.max_years = j.value("max_years", 16u);
    } catch (const json::exception& e) {
        throw InputError(std::string("scenario: ") + e.what());
    }
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    if (!s.description.empty()) j["description"] = s.description;
    j["variables"] = s.variables;
    j["x_factors"] = s.x_factors;
    json b = json::array();
    for (const auto& d : s.boundary) b.push_back({{"poly", d.poly}, {"birth_year", d.birth_year}});
    j["boundary"] = b;
    json pp = json::array();
    for (const auto& p : s.probe_points) pp.push_back(point_json(p));
    j["probe_points"] = pp;
    j["algorithm"] = to_string(s.algorithm);
    j["max_years"] = s.max_years;
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return scenario_from_json(j);
}

Scene scene_of(const Scenario& sc) {
    std::vector<Poly> fs, bs;
    for (const auto& f : sc.x_factors) fs.push_back(parse_poly(f, sc.variables));
    for (const auto& b : sc.boundary) bs.push_back(parse_poly(b.poly, sc.variables));
    Scene s = make_root_scene(sc.variables, fs, bs, sc.probe_points);
    for (std::size_t i = 0; i < sc.boundary.size(); ++i) {
        s.divisors[i].birth_year = sc.boundary[i].birth_year;
        s.divisors[i].block_birth_year = sc.boundary[i].birth_year;
    }
    return s;
}

json shear_json(const Shear& s, const std::vector<std::string>& names) {
    json j{{"var", s.var}, {"q", to_string(s.q, names)}};
    if (s.u) j["u"] = to_string(*s.u, names);
    return j;
}

Shear shear_from_json(const json& j, const std::vector<std::string>& names) {
    Shear s{j.at("var").get<std::size_t>(), parse_poly(j.at("q").get<std::string>(), names), std::nullopt};
    if (j.contains("u")) s.u = parse_poly(j.at("u").get<std::string>(), names);
    return s;
}

json scene_to_json(const Scene& s) {
    const auto& v = s.variables;
    json j;
    j["chart_id"] = s.chart_id;
    j["year"] = s.year;
    j["variables"] = v;
    json xf = json::array();
    for (const auto& f : s.x_factors) xf.push_back({{"id", f.id}, {"poly", to_string(f.poly, v)}});
    j["x_factors"] = xf;
    json ds = json::array();
    for (const auto& d : s.divisors)
        ds.push_back({{"id", d.id},
                      {"poly", to_string(d.poly, v)},
                      {"birth_year", d.birth_year},
                      {"origin", to_string(d.origin)},
                      {"block_birth_year", d.block_birth_year}});
    j["divisors"] = ds;
    json em = json::object();
    for (const auto& [id, m] : s.exc_multiplicities) em[id] = m;
    j["exc_multiplicities"] = em;
    if (s.parent) {
        json c;
        c["chart_id"] = s.parent->centre.chart_id;
        c["coords"] = s.parent->centre.coords;
        json sh = json::array();
        for (const auto& x : s.parent->centre.frame.shears()) sh.push_back(shear_json(x, v));
        c["shears"] = sh;
        j["parent"] = {{"parent_chart", s.parent->parent_chart},
                       {"centre", c},
                       {"exceptional_coord", s.parent->exceptional_coord},
                       {"tag", to_string(s.parent->tag)}};
    } else {
        j["parent"] = nullptr;
    }
    json pm = json::array();
    for (const auto& p : s.parent_map) pm.push_back(to_string(p, v));
    j["parent_map"] = pm;
    json cc = json::array();
    for (const auto& x : s.coordinate_changes) cc.push_back(shear_json(x, v));
    j["coordinate_changes"] = cc;
    json pp = json::array();
    for (const auto& p : s.probe_points) pp.push_back(point_json(p));
    j["probe_points"] = pp;
    return j;
}

BlowupTag parse_tag(const std::string& t) {
    if (t == "standard") return BlowupTag::standard;
    if (t == "non-snc-component") return BlowupTag::non_snc_component;
    if (t == "cleaning") return BlowupTag::cleaning;
    throw InputError("unknown blowup tag " + t);
}

Scene scene_from_json(const json& j) {
    try {
        Scene s;
        s.chart_id = j.at("chart_id").get<std::string>();
        s.year = j.at("year").get<unsigned>();
        s.variables = j.at("variables").get<std::vector<std::string>>();
        const auto& v = s.variables;
        for (const auto& f : j.at("x_factors"))
            s.x_factors.push_back({f.at("id").get<std::string>(), parse_poly(f.at("poly").get<std::string>(), v)});
        for (const auto& d : j.at("divisors")) {
            auto origin = d.at("origin").get<std::string>() == "exceptional" ? DivisorOrigin::exceptional
                                                                             : DivisorOrigin::input_boundary;
            s.divisors.push_back({d.at("id").get<std::string>(), parse_poly(d.at("poly").get<std::string>(), v),
                                  d.at("birth_year").get<unsigned>(), origin, d.at("block_birth_year").get<unsigned>()});
        }
        for (const auto& [id, m] : j.at("exc_multiplicities").items()) s.exc_multiplicities[id] = m.get<unsigned>();
        if (!j.at("parent").is_null()) {
            const auto& p = j.at("parent");
            const auto& c = p.at("centre");
            Frame f(v.size());
            for (const auto& x : c.at("shears")) f.push(shear_from_json(x, v));
            CoordSubspace cs{c.at("chart_id").get<std::string>(), f, c.at("coords").get<std::vector<std::size_t>>()};
            s.parent = BlowupRecord{p.at("parent_chart").get<std::string>(), cs,
                                    p.at("exceptional_coord").get<std::size_t>(), parse_tag(p.at("tag").get<std::string>())};
        }
        for (const auto& p : j.at("parent_map")) s.parent_map.push_back(parse_poly(p.get<std::string>(), v));
        for (const auto& x : j.at("coordinate_changes")) s.coordinate_changes.push_back(shear_from_json(x, v));
        for (const auto& p : j.at("probe_points")) s.probe_points.push_back(parse_point(p, v.size()));
        return s;
    } catch (const json::exception& e) {
        throw InputError(std::string("scene: ") + e.what());
    }
}

json run_to_json(const RunResult& r, const std::string& name) {
    json j;
    j["scenario"] = name;
    j["algorithm"] = to_string(r.algorithm);
    j["terminated"] = r.terminated;
    j["reason"] = r.reason;
    json ev = json::array();
    for (const auto& e : r.events) {
        json x{{"year", e.year},      {"chart", e.chart}, {"chart_map", e.chart_map}, {"point", point_json(e.point)},
               {"inv", e.inv.str()},  {"centre", e.centre}, {"codim", e.codim},       {"tag", to_string(e.tag)},
               {"children", e.children}, {"rows", e.table}};
        if (!e.note.empty()) x["cleaning"] = e.note;
        ev.push_back(x);
    }
    j["events"] = ev;
    json fp = json::array();
    for (const auto& p : r.final_probes)
        fp.push_back({{"chart", p.chart}, {"point", point_json(p.point)}, {"inv", p.inv.str()}, {"snc", p.snc}});
    j["final_probes"] = fp;
    j["certificate"] = r.certificate;
    j["violations"] = r.violations;
    return j;
}

std::string run_table(const RunResult& r) {
    std::ostringstream os;
    os << "codim | marked ideal | companion | maximal contact | boundary\n";
    for (const auto& e : r.events) {
        os << "\nYear " << e.year << ".  Chart " << e.chart;
        if (!e.chart_map.empty()) os << "  " << e.chart_map;
        os << "\n";
        for (const auto& row : e.table) os << "  " << row << "\n";
        os << "  inv = " << e.inv.str() << ",  C_" << e.year << " = " << e.centre << "  [" << to_string(e.tag) << "]\n";
        if (!e.note.empty()) os << "  " << e.note << "\n";
    }
    os << "\n";
    for (const auto& p : r.final_probes)
        os << "probe " << p.chart << " " << point_str(p.point) << " inv=" << p.inv.str() << (p.snc ? " snc" : " NOT snc")
           << "\n";
    for (const auto& c : r.certificate) os << "certificate: " << c << "\n";
    for (const auto& v : r.violations) os << "violation: " << v << "\n";
    os << (r.terminated ? "terminated: " : "stopped: ") << r.reason << "\n";
    return os.str();
}

} // namespace desing

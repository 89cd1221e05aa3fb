#pragma once

// The resolution history as a tree of charts, and the three drivers:
// standard desingularization (A), the snc-preserving algorithm (C), and its
// variant that blows up only components disjoint from Sigma_p.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sncclean.hpp"

namespace desing {

enum class Algorithm { A, C, CVariant };

std::string to_string(Algorithm a);

Algorithm parse_algorithm(const std::string& s);

std::string point_str(const Point& p);

struct BlowupEvent {
    unsigned year = 0; // year of the blown-up chart
    std::string chart;
    Point point;
    InvValue inv;
    std::string centre;
    std::size_t codim = 0;
    BlowupTag tag = BlowupTag::standard;
    std::vector<std::string> children;
    std::string note;                // cleaning trace line, empty otherwise
    std::vector<std::string> table;  // codim | marked ideal | companion | maximal contact | boundary
    std::string chart_map;
};

struct ProbeStatus {
    std::string chart;
    Point point;
    InvValue inv;
    bool snc = false;
};

struct RunResult {
    Algorithm algorithm = Algorithm::A;
    bool terminated = false;
    std::string reason;
    std::vector<BlowupEvent> events;
    std::vector<ProbeStatus> final_probes;
    std::vector<std::string> certificate;
    std::vector<std::string> violations;

    bool all_snc() const {
        return std::all_of(final_probes.begin(), final_probes.end(), [](const ProbeStatus& p) { return p.snc; });
    }
};

// ---------------------------------------------------------------------------

/// Table rows for one inv computation, in the layout of a resolution trace.
std::vector<std::string> trace_rows(const InvChain& ch, const Scene& scene);

std::string chart_map_str(const Scene& s);

// ---------------------------------------------------------------------------

class ResolutionTree {
  public:
    explicit ResolutionTree(Scene root) {
        root_id_ = root.chart_id;
        frontier_.push_back(root.chart_id);
        scenes_.emplace(root.chart_id, std::move(root));
    }

    const Scene& scene(const std::string& id) const { return scenes_.at(id); }
    const std::vector<std::string>& frontier() const { return frontier_; }
    const std::map<std::string, Scene>& scenes() const { return scenes_; }

    /// inv at the images of (chart, point) in all earlier years.
    std::vector<InvValue> history(const Scene& s, const Point& a) {
        if (!s.parent) return {};
        Point pp;
        for (const auto& m : s.parent_map) pp.push_back(m.evaluate(a));
        const Scene& parent = scenes_.at(s.parent->parent_chart);
        auto h = history(parent, pp);
        h.push_back(chain(parent, pp).value);
        return h;
    }

    const InvChain& chain(const Scene& s, const Point& a) {
        std::string key = s.chart_id + "|" + point_str(a);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto h = history(s, a);
        return memo_.emplace(key, compute_inv(s, a, h)).first->second;
    }

    /// Same chart with `a` moved to the origin.
    std::string recentre(const std::string& id, const Point& a) {
        const Scene& s = scenes_.at(id);
        Scene r = s;
        r.chart_id = id + "@" + point_str(a);
        if (scenes_.count(r.chart_id)) return r.chart_id;
        for (auto& f : r.x_factors) f.poly = f.poly.translate(a);
        for (auto& d : r.divisors) d.poly = d.poly.translate(a);
        for (auto& m : r.parent_map) m = m.translate(a);
        if (!s.parent) r.coordinate_changes = centred_shears(s.coordinate_changes, a);
        r.probe_points.clear();
        for (const auto& p : s.all_probe_points()) {
            if (p == a) continue;
            Point q = p;
            for (std::size_t i = 0; i < q.size(); ++i) q[i] -= a[i];
            r.probe_points.push_back(q);
        }
        std::replace(frontier_.begin(), frontier_.end(), id, r.chart_id);
        scenes_.emplace(r.chart_id, std::move(r));
        return id + "@" + point_str(a);
    }

    std::vector<std::string> blow_up(const std::string& id, const CoordSubspace& centre, BlowupTag tag,
                                     std::optional<unsigned> relabel = std::nullopt) {
        auto kids = blowup_charts(scenes_.at(id), centre, tag, relabel);
        std::vector<std::string> ids;
        auto pos = std::find(frontier_.begin(), frontier_.end(), id);
        if (pos == frontier_.end()) throw EngineError("blowing up a chart that is not a leaf: " + id);
        pos = frontier_.erase(pos);
        for (auto& k : kids) {
            ids.push_back(k.chart_id);
            pos = frontier_.insert(pos, k.chart_id) + 1;
            scenes_.emplace(k.chart_id, std::move(k));
        }
        return ids;
    }

  private:
    std::string root_id_;
    std::map<std::string, Scene> scenes_;
    std::vector<std::string> frontier_;
    std::map<std::string, InvChain> memo_;
};

// ---------------------------------------------------------------------------

struct RunOptions {
    Algorithm algorithm = Algorithm::A;
    unsigned max_years = 16;
    std::size_t max_steps = 400;
};

RunResult run(ResolutionTree& tree, const RunOptions& opts);

RunResult run(const Scene& root, const RunOptions& opts);

/// One line per event plus the final status; the format of the frozen traces.
std::vector<std::string> summary_lines(const RunResult& r);

/// Root scene with coordinate i replaced by coordinate perm[i].
Scene permute_variables(const Scene& root, const std::vector<std::size_t>& perm);

/// Per-event (year, inv, codim, tag), sorted: the chart names depend on the labelling.
std::vector<std::string> event_signature(const RunResult& r);

bool determinism_check(const Scene& root, const std::vector<std::size_t>& perm, const RunOptions& opts);

} // namespace desing

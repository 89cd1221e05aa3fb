#pragma once

// One affine chart of the resolution history: strict transforms of the
// factors of X, the divisor components with birth years, and the exponents
// that turn their product into the controlled transform of the year-zero
// ideal.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frame.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace desing {

enum class DivisorOrigin { input_boundary, exceptional };

std::string to_string(DivisorOrigin o);

struct DivisorComponent {
    std::string id;
    Poly poly;
    unsigned birth_year = 0;
    DivisorOrigin origin = DivisorOrigin::input_boundary;
    // Year used for block assignment. Differs from birth_year only for an
    // exceptional divisor of a cleaning blowup that takes over the block
    // membership of the divisor it replaced.
    unsigned block_birth_year = 0;

    friend bool operator==(const DivisorComponent&, const DivisorComponent&) = default;
};

struct XFactor {
    std::string id;
    Poly poly;

    friend bool operator==(const XFactor&, const XFactor&) = default;
};

enum class BlowupTag { standard, non_snc_component, cleaning };

std::string to_string(BlowupTag t);

struct BlowupRecord {
    std::string parent_chart;
    CoordSubspace centre; // in the parent's chart variables
    std::size_t exceptional_coord = 0; // frame coordinate that became the exceptional divisor
    BlowupTag tag = BlowupTag::standard;
};

struct Scene {
    std::string chart_id = "root";
    unsigned year = 0;
    std::vector<std::string> variables;
    std::vector<XFactor> x_factors;
    std::vector<DivisorComponent> divisors;
    std::map<std::string, unsigned> exc_multiplicities;
    std::optional<BlowupRecord> parent;
    // Parent chart variables as polynomials in this chart's variables.
    std::vector<Poly> parent_map;
    std::vector<Shear> coordinate_changes;
    // Extra probe points besides the origin.
    std::vector<Point> probe_points;

    std::size_t nvars() const { return variables.size(); }

    const DivisorComponent* divisor(const std::string& id) const {
        for (const auto& d : divisors)
            if (d.id == id) return &d;
        return nullptr;
    }

    unsigned multiplicity(const std::string& id) const {
        auto it = exc_multiplicities.find(id);
        return it == exc_multiplicities.end() ? 0 : it->second;
    }

    Poly x_product() const {
        Poly p = Poly::constant(nvars(), Rat(1));
        for (const auto& f : x_factors) p *= f.poly;
        return p;
    }

    /// (prod x_factors) * prod h_H^{mult_H}: the controlled transform I^0.
    Poly controlled_ideal() const {
        Poly p = x_product();
        for (const auto& d : divisors)
            if (auto m = multiplicity(d.id)) p *= d.poly.pow(m);
        return p;
    }

    std::vector<Point> all_probe_points() const {
        std::vector<Point> pts{origin(nvars())};
        for (const auto& p : probe_points) pts.push_back(p);
        return pts;
    }

    std::string poly_str(const Poly& p) const { return to_string(p, variables); }
};

// ---------------------------------------------------------------------------

/// Order-one test plus linear independence of differentials at the origin.
bool linear_forms_independent_at_origin(const std::vector<Poly>& polys);

bool boundary_snc_at(const std::vector<Poly>& boundary, const Point& a);

Scene make_root_scene(const std::vector<std::string>& variables, const std::vector<Poly>& x_factors,
                      const std::vector<Poly>& boundary, const std::vector<Point>& probe_points = {});

// ---------------------------------------------------------------------------

struct Admissibility {
    bool ok = false;
    std::string reason;
};

/// Centre smooth (by construction), inside X, and snc with E at the origin of the chart.
Admissibility admissibility_check(const Scene& scene, const CoordSubspace& centre);

// ---------------------------------------------------------------------------

/// Rewrites every polynomial of the scene in the coordinates x_i' = x_i + q.
Scene apply_shear(const Scene& scene, std::size_t i, const Poly& q);

/// Recorded shears rewritten in coordinates centred at the successive images
/// of `a`, which is given in the current coordinates.
std::vector<Shear> centred_shears(const std::vector<Shear>& changes, Point a);

Scene apply_frame(const Scene& scene, const Frame& frame);

/// One child chart per centre coordinate. `new_block_birth` overrides the
/// block year of the new exceptional divisor.
std::vector<Scene> blowup_charts(const Scene& scene, const CoordSubspace& centre,
                                 BlowupTag tag = BlowupTag::standard,
                                 std::optional<unsigned> new_block_birth = std::nullopt);

} // namespace desing

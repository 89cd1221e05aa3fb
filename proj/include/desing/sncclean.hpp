#pragma once

// Simple normal crossings: the direct test, the characterization through inv,
// and the cleaning blowings-up that make the mu invariants vanish.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "invariant.hpp"

namespace desing {

/// Number of components of X through a.
std::size_t sigma_p(const Scene& s, const Point& a);

/// Every component of X and E through a is smooth and their differentials are
/// independent. True off X.
bool snc_direct(const Scene& s, const Point& a);

struct SpecialValue {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> s; // trailing zeros removed, at least one entry

    std::size_t r() const {
        std::size_t t = p;
        for (auto x : s) t += x;
        return t;
    }
    std::string str() const {
        std::string out = "inv_{" + std::to_string(p) + ",(";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
        return out + ")}";
    }
};

/// (p, s_1, 1, s_2, ..., 1, s_d, 1, 0, ..., 1, 0, inf) with p + |s| pairs.
InvValue special_inv(const SpecialValue& sv);

std::optional<SpecialValue> is_special_value(const InvValue& v);

/// The finite ladder of special values with p, d, |s| <= n, in decreasing order.
std::vector<InvValue> special_ladder(std::size_t n);

/// snc through inv: a in Sigma_p, inv(a) = inv_{p,s} and mu_{H,i+1}(a) = 0 for i >= 1.
bool char_snc(const InvChain& ch);

// ---------------------------------------------------------------------------

/// Deterministic points of a centre in general position (chart coordinates).
std::vector<Point> sample_points(const CoordSubspace& c, std::size_t count = 8, unsigned seed = 20240601);

struct CleaningEntry {
    std::string divisor;   // H
    CoordSubspace centre;  // N^k intersected with H
    Rat mu;                // mu_{H,k+1} before the blowing-up
    bool in_sigma_p = true;
    bool case_two = false; // H belongs to E^{k+1}: the new divisor takes over its block year
};

struct CleaningPlan {
    std::size_t k = 0;
    std::vector<CleaningEntry> entries; // oldest first; each repeated mu times
};

/// Monomial desingularization of M(I^k) at the origin of the chart.
CleaningPlan monomial_desing_plan(const InvChain& ch, const Scene& scene, std::size_t k);

struct CleaningStep {
    std::vector<Scene> children;
    std::size_t follow = 0; // child containing the strict transform of N^k over the origin
    std::string trace;
};

CleaningStep cleaning_step(const Scene& scene, const CleaningPlan& plan, const CleaningEntry& e);

} // namespace desing

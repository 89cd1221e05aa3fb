#pragma once

// Marked ideals (N, block, I, d) on a maximal-contact subspace N of a chart
// frame. Generators are stored restricted to N (N's coordinates set to 0).

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frame.hpp"
#include "poly.hpp"

namespace desing {

/// base^power. `source` names the factor or divisor the generator descends
/// from; `scale * monomial * base` is that source restricted to N.
struct Gen {
    Poly base;
    std::uint64_t power = 1;
    std::string source;
    Rat scale = Rat(1);
    std::optional<Poly> monomial;

    Poly expanded() const { return power == 1 ? base : base.pow(power); }
    /// Coefficients of base^power in x_var below x_var^bound.
    std::vector<Poly> coefficients_below(std::size_t var, std::uint64_t bound) const {
        auto cut = [&](const Poly& f) {
            Poly out(f.nvars());
            for (const auto& [m, c] : f.terms())
                if (m[var] < bound) out += Poly::monomial(m, c);
            return out;
        };
        Poly acc = Poly::constant(base.nvars(), Rat(1)), sq = cut(base);
        for (std::uint64_t e = power; e > 0; e >>= 1) {
            if (e & 1) acc = cut(acc * sq);
            if (e > 1) sq = cut(sq * sq);
            if (acc.is_zero()) break;
        }
        return coefficients_wrt(acc, var);
    }
    ExtNat ord() const {
        auto o = ord_at_origin(base);
        if (o.is_infinite()) return o;
        return ExtNat(o.value() * power);
    }
};

struct BlockDivisor {
    std::string id;
    Poly poly; // frame coordinates, restricted to N
};

struct MarkedIdeal {
    std::string chart_id;
    std::vector<std::size_t> n_coords; // sorted
    std::vector<BlockDivisor> block;
    std::vector<Gen> generators;
    std::uint64_t mark = 1;

    bool is_zero() const { return generators.empty(); }
    std::size_t nvars() const { return generators.empty() ? 0 : generators[0].base.nvars(); }

    ExtNat ord_at_origin() const {
        ExtNat best = ExtNat::infinity();
        for (const auto& g : generators) best = std::min(best, g.ord());
        return best;
    }
};

struct MonomialResidualSplit {
    std::map<std::string, std::uint64_t> exponents; // order along each block divisor
    std::vector<Gen> residual;
};

struct Terminal {
    bool infinite = false; // nu = infinity (zero ideal) or nu = 0 (monomial case)
};

using CompanionResult = std::variant<MarkedIdeal, Terminal>;

// ---------------------------------------------------------------------------

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

/// Canonical representative: drops zero generators, makes bases primitive,
/// merges duplicates and divides all powers and the mark by their gcd.
MarkedIdeal normalize(MarkedIdeal mi);

void require_on_n(const MarkedIdeal& mi, const Point& a);

/// a lies in {x in N : ord_x I >= d}.
bool cosupport_test(const MarkedIdeal& mi, const Point& a);

/// Monomial part along the block and the residual; nullopt for the zero ideal.
std::optional<MonomialResidualSplit> split(const MarkedIdeal& mi);

/// lcm-of-marks sum; the zero ideal (whose cosupport is all of N) is neutral.
MarkedIdeal marked_sum(const MarkedIdeal& a, const MarkedIdeal& b);

/// Companion ideal at the origin (which must be in the cosupport).
CompanionResult companion(const MarkedIdeal& mi);

/// Coefficient ideal of `j` with respect to the frame coordinate `mc`, plus the
/// boundary divisors (frame polynomials, unrestricted). The result lives on
/// N' = N + {mc} with block `new_block` (restricted to N' here).
MarkedIdeal coeff_ideal_plus_boundary(const MarkedIdeal& j, std::size_t mc,
                                      const std::vector<BlockDivisor>& boundary,
                                      const std::vector<BlockDivisor>& new_block);

/// Pullback through a chart map (frame variables -> child variables) divided by
/// exc^mark, where exc is the child variable `exc`.
MarkedIdeal controlled_transform(const MarkedIdeal& mi, std::span<const Poly> chart_map, std::size_t exc,
                                 const std::string& child_chart);

// ---------------------------------------------------------------------------

std::string gen_string(const Gen& g, std::span<const std::string> names);

/// `(z^3 + x*y,1)`, `((z^3,y^2),2)` or `(0)`.
std::string to_string(const MarkedIdeal& mi, std::span<const std::string> names);

} // namespace desing

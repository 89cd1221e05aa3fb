#pragma once

// The resolution invariant inv = (nu_1, s_1, ..., nu_r, s_r, nu_{r+1}) at a
// point of a chart, built level by level from companion ideals, maximal
// contact hypersurfaces and coefficient ideals.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "marked_ideal.hpp"
#include "scene.hpp"

namespace desing {

struct InvValue {
    bool off_x = false;
    std::vector<std::pair<Rat, std::uint64_t>> pairs; // (nu_i, s_i)
    bool terminal_infinite = true;                     // last entry: inf or 0

    std::vector<ExtRat> flatten() const {
        if (off_x) return {ExtRat::of(Rat(0))};
        std::vector<ExtRat> v;
        for (const auto& [nu, s] : pairs) {
            v.push_back(ExtRat::of(nu));
            v.push_back(ExtRat::of(Rat(static_cast<unsigned long>(s))));
        }
        v.push_back(terminal_infinite ? ExtRat::inf() : ExtRat::of(Rat(0)));
        return v;
    }

    std::string str() const {
        std::string out = "(";
        bool first = true;
        for (const auto& e : flatten()) {
            if (!first) out += ",";
            first = false;
            out += e.str();
        }
        return out + ")";
    }

    friend bool operator==(const InvValue& a, const InvValue& b) { return a.flatten() == b.flatten(); }
    friend std::strong_ordering operator<=>(const InvValue& a, const InvValue& b) {
        auto fa = a.flatten(), fb = b.flatten();
        return std::lexicographical_compare_three_way(fa.begin(), fa.end(), fb.begin(), fb.end());
    }
};

bool prefix_equal(const std::vector<ExtRat>& a, const std::vector<ExtRat>& b, std::size_t len);

/// Parses "(2,0,1,0,3/2,0,inf)" or "(0)".
InvValue parse_inv(const std::string& text);

/// One codimension level k of the computation.
struct InvLevel {
    Frame frame;                       // frame in which `ideal` is written
    MarkedIdeal ideal;                 // I^k (for k = 0 only the strict transform of X)
    std::map<std::string, Rat> mu;     // mu_{H,k} for H in the block of I^k (k >= 1)
    ExtRat nu;                         // nu_{k+1}
    std::uint64_t s = 0;               // s_{k+1}
    unsigned birth = 0;                // birth year of inv_{k+1/2}
    std::vector<std::string> old_block; // E^{k+1}
    std::vector<std::string> new_block; // the block of J^k
    std::optional<MarkedIdeal> companion;
    std::optional<std::size_t> max_contact; // frame variable of the next level
    std::optional<Shear> shear;
    std::optional<Gen> contact_gen; // generator of J^k the hypersurface came from
    Rat contact_coeff = Rat(1);     // that generator equals coeff * x_v' in the sheared frame
};

struct InvChain {
    std::string chart_id;
    unsigned year = 0;
    Point point;
    std::vector<std::string> variables;
    std::vector<InvLevel> levels;
    InvValue value;
    Frame frame;                         // final frame, in coordinates centred at `point`
    std::vector<std::size_t> n_coords;   // N^r
    bool list_presentation = false;
    std::vector<std::string> factors_through; // x_factor ids vanishing at the point
    std::map<std::string, unsigned> block_year; // divisors through the point
    std::map<std::string, unsigned> birth_year;

    std::size_t sigma() const { return factors_through.size(); }
    bool at_origin() const {
        return std::all_of(point.begin(), point.end(), [](const Rat& r) { return sgn(r) == 0; });
    }
};

struct InvOptions {
    bool list_presentation = true; // ((f_1..f_p),1) when all f_i have order one
};

// ---------------------------------------------------------------------------

struct ContactChoice {
    Shear shear; // x_v' = u * x_v + q; the hypersurface is x_v' = 0
    std::size_t gen = 0;
    Rat coeff;
};

/// Maximal contact hypersurface for J: a derivative of order d-1 of a generator,
/// of order one, transverse to N and to `block` (frame polys through the origin).
ContactChoice choose_maximal_contact(const MarkedIdeal& j, const std::vector<Poly>& block);

/// Birth year of a truncation of length `len` given the inv values of the
/// ancestors, the last one belonging to year `year - 1`.
unsigned truncation_birth(const std::vector<ExtRat>& current, std::size_t len, unsigned year,
                          const std::vector<InvValue>& history);

/// inv at `a`; `history` holds inv at the images of `a` in earlier years.
InvChain compute_inv(const Scene& scene, const Point& a, const std::vector<InvValue>& history = {},
                     const InvOptions& opts = {});

// ---------------------------------------------------------------------------

/// Shears the frame so that each of `polys` (frame polynomials) becomes, on N,
/// a multiple of a new frame coordinate; returns the enlarged coordinate set.
std::vector<std::size_t> adjoin_coordinates(Frame& frame, std::vector<std::size_t> coords,
                                            std::vector<Poly> polys);

/// Divisors of the final level whose sum of orders reaches the mark: fewest
/// components, then oldest.
std::vector<std::string> monomial_centre_divisors(const InvChain& ch);

/// The centre C determined by inv at the origin of the chart.
CoordSubspace extract_centre(const InvChain& ch, const Scene& scene);

// ---------------------------------------------------------------------------

struct NormalFormEntry {
    std::string source;   // x_factor or divisor id
    Poly coordinate;      // x_l, a multiple of a final frame variable
    std::size_t frame_var = 0;
    Poly monomial;        // m_l
    Poly xi;              // g_l - x_l * m_l
    bool verified = false; // xi lies in (x_1, ..., x_{l-1})
};

/// g_l = x_l * m_l + xi_l along the maximal contact chain (list presentation).
std::vector<NormalFormEntry> normal_form(const InvChain& ch, const Scene& scene);

} // namespace desing

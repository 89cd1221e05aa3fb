#pragma once

// Coordinate frames obtained from a chart by successive shears
// x_i' = x_i + q(other frame variables), and coordinate subspaces in them.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"

namespace desing {

using Point = std::vector<Rat>;

inline Point origin(std::size_t n) { return Point(n, Rat(0)); }

inline std::vector<Poly> identity_map(std::size_t n) {
    std::vector<Poly> m;
    for (std::size_t i = 0; i < n; ++i) m.push_back(Poly::variable(n, i));
    return m;
}

/// x_var' = u * x_var + q, with u and q free of x_var, q(0) = 0, u(0) != 0.
/// An empty u means u = 1, the only case that is a polynomial automorphism.
struct Shear {
    std::size_t var = 0;
    Poly q;
    std::optional<Poly> u;

    bool is_plain() const { return !u.has_value(); }
    friend bool operator==(const Shear&, const Shear&) = default;
};

/// f in the coordinates after `s`. For a unit shear the result is
/// u^deg * f(x_var -> (x_var - q) / u), equal to f up to a unit at the origin.
inline Poly shear_poly(const Poly& f, const Shear& s) {
    const std::size_t n = f.nvars();
    if (s.is_plain()) {
        auto inverse = identity_map(n);
        inverse[s.var] = Poly::variable(n, s.var) - s.q;
        return f.substitute(inverse);
    }
    auto cs = coefficients_wrt(f, s.var);
    const Poly shifted = Poly::variable(n, s.var) - s.q;
    Poly out(n), power = Poly::constant(n, Rat(1));
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (!cs[k].is_zero()) out += cs[k] * power * s.u->pow(cs.size() - 1 - k);
        power *= shifted;
    }
    return out;
}

/// Terms of degree at most d.
inline Poly truncate_degree(const Poly& f, std::uint64_t d) {
    Poly out(f.nvars());
    for (const auto& [m, c] : f.terms())
        if (monomial_degree(m) <= d) out += Poly::monomial(m, c);
    return out;
}

/// For h of order one with a nonzero x_v coefficient, a polynomial phi free
/// of x_v with h(x_v = phi) = 0, if one exists. Then h = (x_v - phi) * unit.
inline std::optional<Poly> polynomial_root(const Poly& h, std::size_t v, std::uint64_t max_degree = 24) {
    const std::size_t n = h.nvars();
    const Rat c = h.linear_part()[v];
    if (sgn(c) == 0 || sgn(h.constant_term()) != 0) return std::nullopt;
    const auto deg = static_cast<std::uint64_t>(h.total_degree());
    if (deg > max_degree) return std::nullopt;
    const auto cs = coefficients_wrt(h - Poly::variable(n, v) * Poly::constant(n, c), v);
    const Poly scale = Poly::constant(n, Rat(-1) / c);
    // sum_k cs[k] * p^k up to degree `deg`, by Horner.
    auto eval_truncated = [&](const Poly& p) {
        Poly acc(n);
        for (std::size_t k = cs.size(); k-- > 0;) acc = truncate_degree(acc * p + cs[k], deg);
        return acc;
    };
    // Each pass fixes one more degree of the power series root.
    Poly phi(n);
    for (std::uint64_t k = 0; k < deg; ++k) {
        Poly next = eval_truncated(phi) * scale;
        if (next == phi) break;
        phi = next;
    }
    try {
        Poly check(n);
        for (std::size_t k = cs.size(); k-- > 0;) check = check * phi + cs[k];
        if (!(check + phi * Poly::constant(n, c)).is_zero()) return std::nullopt;
    } catch (const ResourceError&) {
        return std::nullopt;
    }
    return phi;
}

class Frame {
  public:
    Frame() = default;
    explicit Frame(std::size_t n) : n_(n), to_frame_(identity_map(n)), from_frame_(identity_map(n)) {}

    std::size_t nvars() const { return n_; }
    const std::vector<Shear>& shears() const { return shears_; }
    bool is_identity() const { return shears_.empty(); }
    bool is_polynomial() const {
        return std::all_of(shears_.begin(), shears_.end(), [](const Shear& s) { return s.is_plain(); });
    }

    /// q is written in the current frame variables.
    void push(const Shear& s) {
        if (s.var >= n_ || s.q.nvars() != n_) throw InputError("shear: bad arity");
        if (s.q.involves(s.var)) throw InputError("shear: q must not involve the sheared variable");
        if (sgn(s.q.constant_term()) != 0) throw InputError("shear: q must vanish at the origin");
        if (s.u && (s.u->involves(s.var) || sgn(s.u->constant_term()) == 0))
            throw InputError("shear: u must be a unit free of the sheared variable");
        if (s.q.is_zero() && s.is_plain()) return;
        if (s.is_plain()) {
            auto inverse = identity_map(n_);
            inverse[s.var] = Poly::variable(n_, s.var) - s.q;
            for (auto& p : to_frame_) p = p.substitute(inverse);
            from_frame_[s.var] = from_frame_[s.var] + s.q.substitute(from_frame_);
        } else {
            from_frame_[s.var] = s.u->substitute(from_frame_) * from_frame_[s.var] + s.q.substitute(from_frame_);
        }
        shears_.push_back(s);
    }

    /// Chart variable i as a polynomial in frame variables (polynomial frames only).
    const std::vector<Poly>& to_frame() const {
        if (!is_polynomial()) throw UnsupportedError("frame with a unit shear has no polynomial inverse");
        return to_frame_;
    }
    /// Frame variable i as a polynomial in chart variables.
    const std::vector<Poly>& from_frame() const { return from_frame_; }

    /// Exact for polynomial frames, up to a unit at the origin otherwise.
    Poly to(const Poly& chart_poly) const {
        if (is_identity()) return chart_poly;
        if (is_polynomial()) return chart_poly.substitute(to_frame_);
        Poly p = chart_poly;
        for (const auto& s : shears_) p = shear_poly(p, s);
        return p;
    }
    Poly from(const Poly& frame_poly) const {
        return is_identity() ? frame_poly : frame_poly.substitute(from_frame_);
    }
    Point coords_of(const Point& chart_point) const {
        Point out;
        for (const auto& f : from_frame_) out.push_back(f.evaluate(chart_point));
        return out;
    }

  private:
    std::size_t n_ = 0;
    std::vector<Shear> shears_;
    std::vector<Poly> to_frame_, from_frame_;
};

/// If f = c * x_i for a single variable, returns i.
inline std::optional<std::size_t> pure_variable(const Poly& f) {
    if (f.terms().size() != 1) return std::nullopt;
    const auto& m = f.terms().begin()->first;
    if (monomial_degree(m) != 1) return std::nullopt;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] == 1) return i;
    return std::nullopt;
}

/// The subspace {frame coordinates in `coords` vanish} of a chart.
struct CoordSubspace {
    std::string chart_id;
    Frame frame;
    std::vector<std::size_t> coords; // sorted, nonempty

    std::size_t codim() const { return coords.size(); }

    /// Generators of the ideal, in chart variables.
    std::vector<Poly> chart_generators() const {
        std::vector<Poly> g;
        for (auto c : coords) g.push_back(frame.from_frame()[c]);
        return g;
    }

    /// Generators simplified by eliminating pure-coordinate generators from the others.
    std::vector<Poly> reduced_generators() const {
        auto gens = chart_generators();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                auto v = pure_variable(gens[i]);
                if (!v) continue;
                std::size_t idx[] = {*v};
                for (std::size_t j = 0; j < gens.size(); ++j) {
                    if (j == i || !gens[j].involves(*v)) continue;
                    gens[j] = gens[j].restrict_zero(idx);
                    changed = true;
                }
            }
        }
        for (auto& g : gens) g = g.primitive();
        return gens;
    }

    /// Chart variables when the subspace is a plain coordinate subspace of the chart.
    std::optional<std::vector<std::size_t>> chart_coordinates() const {
        std::vector<std::size_t> vars;
        for (const auto& g : reduced_generators()) {
            auto v = pure_variable(g);
            if (!v) return std::nullopt;
            vars.push_back(*v);
        }
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) return std::nullopt;
        return vars;
    }

    /// f vanishes identically on the subspace.
    bool contains_zero_set_of(const Poly& chart_poly) const {
        return frame.to(chart_poly).restrict_zero(coords).is_zero();
    }

    bool contains_point(const Point& chart_point) const {
        auto fc = frame.coords_of(chart_point);
        return std::all_of(coords.begin(), coords.end(), [&](std::size_t c) { return sgn(fc[c]) == 0; });
    }

    /// `{0}`, `{y=z=0}` or `{x + y^2=0, z=0}`.
    std::string describe(std::span<const std::string> names) const {
        if (coords.size() == names.size()) return "{0}";
        if (auto vars = chart_coordinates()) {
            std::string s = "{";
            for (auto v : *vars) s += names[v] + "=";
            return s + "0}";
        }
        std::string s = "{";
        bool first = true;
        for (const auto& g : reduced_generators()) {
            if (!first) s += ", ";
            first = false;
            s += to_string(g, names) + "=0";
        }
        return s + "}";
    }

    /// Same ideal (both are smooth, so generator-wise containment suffices).
    bool same_subspace(const CoordSubspace& o) const {
        if (codim() != o.codim()) return false;
        for (const auto& g : chart_generators())
            if (!o.contains_zero_set_of(g)) return false;
        for (const auto& g : o.chart_generators())
            if (!contains_zero_set_of(g)) return false;
        return true;
    }
};

} // namespace desing

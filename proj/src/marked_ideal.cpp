#include "desing/marked_ideal.hpp"

namespace desing {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) throw ResourceError("mark overflow");
    return a * b;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) { return checked_mul(a / std::gcd(a, b), b); }

MarkedIdeal normalize(MarkedIdeal mi) {
    std::vector<Gen> out;
    for (auto& g : mi.generators) {
        g.base = g.base.restrict_zero(mi.n_coords);
        if (g.base.is_zero()) continue;
        Poly p = g.base.primitive();
        if (g.power == 1) {
            // p = base / c, so base = c * p.
            Rat c = g.base.leading_coefficient() / p.leading_coefficient();
            g.scale *= c;
        }
        g.base = std::move(p);
        bool dup = std::any_of(out.begin(), out.end(),
                               [&](const Gen& o) { return o.base == g.base && o.power == g.power; });
        if (!dup) out.push_back(std::move(g));
    }
    mi.generators = std::move(out);
    if (mi.generators.empty()) return mi;
    std::uint64_t gg = mi.mark;
    for (const auto& g : mi.generators) gg = std::gcd(gg, g.power);
    if (gg > 1) {
        mi.mark /= gg;
        for (auto& g : mi.generators) g.power /= gg;
    }
    return mi;
}

void require_on_n(const MarkedIdeal& mi, const Point& a) {
    for (auto c : mi.n_coords)
        if (c >= a.size() || sgn(a[c]) != 0) throw InputError("point is not on the maximal-contact subspace");
}

bool cosupport_test(const MarkedIdeal& mi, const Point& a) {
    require_on_n(mi, a);
    for (const auto& g : mi.generators) {
        auto o = ord_at_point(g.base, a);
        if (o.is_infinite()) continue;
        if (o.value() * g.power < mi.mark) return false;
    }
    return true;
}

std::optional<MonomialResidualSplit> split(const MarkedIdeal& mi) {
    if (mi.is_zero()) return std::nullopt;
    const std::size_t n = mi.nvars();
    MonomialResidualSplit s{{}, mi.generators};
    for (const auto& h : mi.block) {
        if (h.poly.is_constant()) continue;
        std::uint64_t e = UINT64_MAX;
        for (const auto& g : mi.generators) e = std::min<std::uint64_t>(e, ord_along(g.base, h.poly) * g.power);
        if (e == 0) continue;
        s.exponents[h.id] = e;
        for (auto& g : s.residual) {
            if (e % g.power == 0) {
                auto q = e / g.power;
                g.base = *divide_exact(g.base, h.poly.pow(q));
                if (g.power == 1) g.monomial = g.monomial.value_or(Poly::constant(n, Rat(1))) * h.poly.pow(q);
            } else {
                g.base = *divide_exact(g.expanded(), h.poly.pow(e));
                g.power = 1;
            }
        }
    }
    return s;
}

MarkedIdeal marked_sum(const MarkedIdeal& a, const MarkedIdeal& b) {
    if (a.n_coords != b.n_coords) throw InputError("marked_sum: different maximal-contact subspaces");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    MarkedIdeal r = a;
    r.mark = std::lcm(a.mark, b.mark);
    for (auto& g : r.generators) g.power = checked_mul(g.power, r.mark / a.mark);
    for (auto g : b.generators) {
        g.power = checked_mul(g.power, r.mark / b.mark);
        r.generators.push_back(std::move(g));
    }
    for (const auto& h : b.block)
        if (std::none_of(r.block.begin(), r.block.end(), [&](const BlockDivisor& x) { return x.id == h.id; }))
            r.block.push_back(h);
    return normalize(std::move(r));
}

CompanionResult companion(const MarkedIdeal& mi) {
    auto s = split(mi);
    if (!s) return Terminal{true};
    MarkedIdeal residual = mi;
    residual.generators = s->residual;
    auto mu = residual.ord_at_origin();
    if (mu.is_infinite()) return Terminal{true};
    if (mu.value() == 0) return Terminal{false};
    if (!cosupport_test(mi, origin(mi.nvars()))) throw EngineError("companion: origin outside the cosupport");
    if (mu.value() >= mi.mark) {
        residual.mark = mu.value();
        return normalize(std::move(residual));
    }
    residual.mark = mu.value();
    std::uint64_t g = 0;
    for (const auto& [id, e] : s->exponents) g = std::gcd(g, e);
    Poly m = Poly::constant(mi.nvars(), Rat(1));
    for (const auto& h : mi.block)
        if (auto it = s->exponents.find(h.id); it != s->exponents.end()) m *= h.poly.pow(it->second / g);
    MarkedIdeal mono = mi;
    mono.generators = {Gen{m, std::max<std::uint64_t>(g, 1), "monomial"}};
    mono.mark = mi.mark - mu.value();
    return marked_sum(normalize(std::move(residual)), normalize(std::move(mono)));
}

std::string gen_string(const Gen& g, std::span<const std::string> names) {
    if (g.power == 1) return to_string(g.base, names);
    if (g.base.terms().size() == 1) return to_string(g.base.pow(g.power), names);
    return "(" + to_string(g.base, names) + ")^" + std::to_string(g.power);
}

std::string to_string(const MarkedIdeal& mi, std::span<const std::string> names) {
    if (mi.is_zero()) return "(0)";
    std::string g;
    for (std::size_t i = 0; i < mi.generators.size(); ++i) {
        if (i) g += ",";
        g += gen_string(mi.generators[i], names);
    }
    if (mi.generators.size() > 1) g = "(" + g + ")";
    return "(" + g + "," + std::to_string(mi.mark) + ")";
}

MarkedIdeal coeff_ideal_plus_boundary(const MarkedIdeal& j, std::size_t mc, const std::vector<BlockDivisor>& boundary, const std::vector<BlockDivisor>& new_block) {
    if (std::binary_search(j.n_coords.begin(), j.n_coords.end(), mc))
        throw InputError("maximal contact coordinate already vanishes on N");
    MarkedIdeal r;
    r.chart_id = j.chart_id;
    r.n_coords = j.n_coords;
    r.n_coords.push_back(mc);
    std::sort(r.n_coords.begin(), r.n_coords.end());
    const std::uint64_t d = j.mark;
    // Coefficient a_i carries weight d - i; the common mark is the lcm of the weights present,
    // an equivalent form of the mark d!.
    std::vector<std::tuple<Poly, std::uint64_t, std::uint64_t, const Gen*>> coeffs; // a, weight, power, source
    r.mark = 1;
    for (const auto& g : j.generators) {
        auto bs = coefficients_wrt(g.base, mc);
        std::size_t nonzero = 0, k = 0;
        for (std::size_t i = 0; i < bs.size(); ++i)
            if (!bs[i].is_zero()) ++nonzero, k = i;
        if (g.power > 1 && nonzero == 1) {
            // base = x_mc^k * b: the only coefficient of base^p is b^p, at x_mc^(kp).
            const std::uint64_t i = checked_mul(k, g.power);
            Poly c = bs[k].restrict_zero(r.n_coords);
            if (i >= d || c.is_zero()) continue;
            r.mark = checked_lcm(r.mark, d - i);
            coeffs.emplace_back(std::move(c), d - i, g.power, &g);
            continue;
        }
        auto cs = g.coefficients_below(mc, d);
        for (std::uint64_t i = 0; i < cs.size(); ++i) {
            Poly c = cs[i].restrict_zero(r.n_coords);
            if (c.is_zero()) continue;
            r.mark = checked_lcm(r.mark, d - i);
            coeffs.emplace_back(std::move(c), d - i, 1, &g);
        }
    }
    for (auto& [c, w, p, g] : coeffs) {
        Gen ng{std::move(c), checked_mul(p, r.mark / w), g->source};
        if (g->power == 1 && d == 1) {
            ng.scale = g->scale;
            ng.monomial = g->monomial;
        }
        r.generators.push_back(std::move(ng));
    }
    r = normalize(std::move(r));
    for (const auto& h : boundary) {
        Poly hr = h.poly.restrict_zero(r.n_coords);
        if (hr.is_zero()) continue;
        MarkedIdeal b{r.chart_id, r.n_coords, {}, {Gen{hr, 1, h.id}}, 1};
        r = marked_sum(r, normalize(std::move(b)));
    }
    r.block.clear();
    for (const auto& h : new_block) r.block.push_back({h.id, h.poly.restrict_zero(r.n_coords)});
    return normalize(std::move(r));
}

MarkedIdeal controlled_transform(const MarkedIdeal& mi, std::span<const Poly> chart_map, std::size_t exc, const std::string& child_chart) {
    if (std::binary_search(mi.n_coords.begin(), mi.n_coords.end(), exc))
        throw DomainError("strict transform of N does not meet this chart");
    MarkedIdeal r = mi;
    r.chart_id = child_chart;
    for (auto& g : r.generators) {
        g.monomial.reset();
        Poly pulled = g.base.substitute(chart_map);
        if (pulled.is_zero()) {
            g.base = pulled;
            continue;
        }
        auto k = static_cast<std::uint64_t>(ord_along_coordinate(pulled, exc));
        if (checked_mul(k, g.power) < mi.mark) throw DomainError("controlled transform: centre not in the cosupport");
        if (mi.mark % g.power == 0) {
            g.base = divexact_coordinate(pulled, exc, static_cast<std::uint32_t>(mi.mark / g.power));
        } else {
            g.base = divexact_coordinate(pulled.pow(g.power), exc, static_cast<std::uint32_t>(mi.mark));
            g.power = 1;
        }
    }
    for (auto& h : r.block) {
        Poly pulled = h.poly.substitute(chart_map);
        h.poly = divexact_coordinate(pulled, exc, ord_along_coordinate(pulled, exc));
    }
    return normalize(std::move(r));
}

} // namespace desing

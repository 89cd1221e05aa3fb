#include "desing/scene.hpp"

namespace desing {

std::string to_string(DivisorOrigin o) {
    return o == DivisorOrigin::input_boundary ? "input_boundary" : "exceptional";
}

std::string to_string(BlowupTag t) {
    switch (t) {
    case BlowupTag::standard: return "standard";
    case BlowupTag::non_snc_component: return "non-snc-component";
    case BlowupTag::cleaning: return "cleaning";
    }
    return "?";
}

bool linear_forms_independent_at_origin(const std::vector<Poly>& polys) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& p : polys) {
        if (ord_at_origin(p) != ExtNat(1)) return false;
        rows.push_back(p.linear_part());
    }
    return independent(rows);
}

bool boundary_snc_at(const std::vector<Poly>& boundary, const Point& a) {
    std::vector<Poly> through;
    for (const auto& h : boundary) {
        Poly t = h.translate(a);
        if (sgn(t.constant_term()) == 0) through.push_back(t);
    }
    return linear_forms_independent_at_origin(through);
}

Admissibility admissibility_check(const Scene& scene, const CoordSubspace& centre) {
    if (centre.chart_id != scene.chart_id) return {false, "centre belongs to another chart"};
    if (centre.coords.empty()) return {false, "empty centre"};
    if (centre.frame.nvars() != scene.nvars()) return {false, "centre frame arity mismatch"};
    bool inside = false;
    for (const auto& f : scene.x_factors)
        if (centre.contains_zero_set_of(f.poly)) inside = true;
    if (!inside) return {false, "centre not inside X"};

    const std::size_t n = scene.nvars();
    std::vector<std::vector<Rat>> all_h, rows_out;
    for (auto c : centre.coords) rows_out.push_back(unit_vector(n, c));
    std::size_t out_count = 0;
    for (const auto& d : scene.divisors) {
        Poly h = centre.frame.to(d.poly);
        if (sgn(h.constant_term()) != 0) continue;
        if (ord_at_origin(h) != ExtNat(1)) return {false, "divisor " + d.id + " singular at the centre"};
        auto l = h.linear_part();
        all_h.push_back(l);
        if (centre.contains_zero_set_of(d.poly)) {
            for (std::size_t i = 0; i < n; ++i)
                if (sgn(l[i]) != 0 && !std::binary_search(centre.coords.begin(), centre.coords.end(), i))
                    return {false, "divisor " + d.id + " not snc with the centre"};
        } else {
            rows_out.push_back(l);
            ++out_count;
        }
    }
    if (!independent(all_h)) return {false, "divisor not snc at the centre"};
    if (rank(rows_out) != centre.codim() + out_count) return {false, "centre not transverse to E"};
    return {true, ""};
}

Scene apply_shear(const Scene& scene, std::size_t i, const Poly& q) {
    if (i >= scene.nvars() || q.nvars() != scene.nvars()) throw InputError("apply_shear: bad arguments");
    if (q.involves(i)) throw InputError("apply_shear: q involves the sheared variable");
    if (sgn(q.constant_term()) != 0) throw InputError("apply_shear: q has a constant term");
    if (q.is_zero()) return scene;
    auto inverse = identity_map(scene.nvars());
    inverse[i] = Poly::variable(scene.nvars(), i) - q;
    Scene out = scene;
    for (auto& f : out.x_factors) f.poly = f.poly.substitute(inverse);
    for (auto& d : out.divisors) d.poly = d.poly.substitute(inverse);
    for (auto& p : out.parent_map) p = p.substitute(inverse);
    for (auto& pt : out.probe_points) pt[i] += q.evaluate(pt);
    out.coordinate_changes.push_back({i, q});
    return out;
}

std::vector<Shear> centred_shears(const std::vector<Shear>& changes, Point a) {
    std::vector<Shear> out(changes.size());
    for (std::size_t k = changes.size(); k-- > 0;) {
        const auto& s = changes[k];
        a[s.var] -= s.q.evaluate(a);
        Poly q = s.q.translate(a);
        out[k] = Shear{s.var, q - Poly::constant(q.nvars(), q.constant_term()), s.u};
    }
    return out;
}

Scene apply_frame(const Scene& scene, const Frame& frame) {
    Scene s = scene;
    for (const auto& sh : frame.shears()) s = apply_shear(s, sh.var, sh.q);
    return s;
}

Scene make_root_scene(const std::vector<std::string>& variables, const std::vector<Poly>& x_factors, const std::vector<Poly>& boundary, const std::vector<Point>& probe_points) {
    const std::size_t n = variables.size();
    if (n == 0) throw InputError("no variables");
    Scene s;
    s.variables = variables;
    s.probe_points = probe_points;
    for (const auto& p : probe_points)
        if (p.size() != n) throw InputError("probe point dimension mismatch");
    for (std::size_t i = 0; i < x_factors.size(); ++i) {
        const auto& f = x_factors[i];
        if (f.nvars() != n) throw InputError("x_factor arity mismatch");
        if (f.is_zero()) throw InputError("x_factor is zero");
        if (f.is_constant()) throw InputError("x_factor is a unit");
        for (std::size_t j = 0; j < i; ++j) {
            auto q = divide_exact(f, x_factors[j]);
            if (q && q->is_constant()) throw InputError("x_factors " + std::to_string(j) + " and " +
                                                        std::to_string(i) + " are associate");
        }
        s.x_factors.push_back({"f" + std::to_string(i + 1), f});
    }
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        const auto& h = boundary[i];
        if (h.nvars() != n) throw InputError("boundary arity mismatch");
        if (h.is_constant()) throw InputError("boundary component is a unit or zero");
        for (const auto& f : x_factors)
            if (divide_exact(f, h)) throw InputError("boundary component " + to_string(h, variables) +
                                                     " divides a component of X; (X,E) cannot be snc there");
        s.divisors.push_back({"h" + std::to_string(i + 1), h, 0, DivisorOrigin::input_boundary, 0});
    }
    for (const auto& a : s.all_probe_points())
        if (!boundary_snc_at(boundary, a)) throw InputError("boundary divisor is not snc at a probe point");
    return s;
}

std::vector<Scene> blowup_charts(const Scene& scene, const CoordSubspace& centre, BlowupTag tag, std::optional<unsigned> new_block_birth) {
    auto adm = admissibility_check(scene, centre);
    if (!adm.ok) throw DomainError("inadmissible centre " + centre.describe(scene.variables) + ": " + adm.reason);

    const std::size_t n = scene.nvars();
    Frame frame(n);
    std::vector<std::size_t> coords;
    if (auto vars = centre.chart_coordinates()) {
        coords = *vars;
    } else {
        frame = centre.frame;
        coords = centre.coords;
    }
    std::vector<Scene> children;
    for (auto i : coords) {
        auto images = identity_map(n);
        for (auto j : coords)
            if (j != i) images[j] = Poly::variable(n, i) * Poly::variable(n, j);
        std::vector<Poly> pmap;
        for (const auto& t : frame.to_frame()) pmap.push_back(t.substitute(images));

        Scene child;
        child.chart_id = scene.chart_id + "." + scene.variables[i];
        child.year = scene.year + 1;
        child.variables = scene.variables;
        child.parent_map = pmap;
        child.coordinate_changes = frame.shears();
        child.parent = BlowupRecord{scene.chart_id, centre, i, tag};
        child.exc_multiplicities = scene.exc_multiplicities;

        // Each pullback is x_i^k times its strict transform; checked factor by factor,
        // which with the exponent count below gives the controlled transform of the product.
        const Poly xi = Poly::variable(n, i);
        auto strict = [&](const Poly& f, std::uint64_t& k) {
            Poly pulled = f.substitute(pmap);
            k = ord_along_coordinate(pulled, i);
            Poly t = divexact_coordinate(pulled, i, static_cast<std::uint32_t>(k));
            const std::size_t idx[] = {i};
            if (t * xi.pow(k) != pulled || t.restrict_zero(idx).is_zero())
                throw EngineError("strict transform bookkeeping broken in chart " + child.chart_id);
            return t;
        };
        std::uint64_t exc_power = 0, x_power = 0;
        for (const auto& f : scene.x_factors) {
            std::uint64_t k = 0;
            Poly t = strict(f.poly, k);
            x_power += k;
            child.x_factors.push_back({f.id, std::move(t)});
        }
        for (const auto& d : scene.divisors) {
            std::uint64_t k = 0;
            DivisorComponent nd = d;
            nd.poly = strict(d.poly, k);
            exc_power += k * scene.multiplicity(d.id);
            child.divisors.push_back(std::move(nd));
        }
        if (x_power == 0) throw DomainError("centre not inside X");
        const std::string exc_id = "e" + std::to_string(child.year);
        const unsigned block_year = new_block_birth.value_or(child.year);
        child.divisors.push_back(
            {exc_id, Poly::variable(n, i), child.year, DivisorOrigin::exceptional, block_year});
        child.exc_multiplicities[exc_id] = static_cast<unsigned>(exc_power + x_power - 1);

        for (const auto& pt : scene.probe_points) {
            auto fc = frame.coords_of(pt);
            if (sgn(fc[i]) == 0) continue;
            bool earlier = false;
            for (auto j : coords)
                if (j < i && sgn(fc[j]) != 0) earlier = true;
            if (earlier) continue;
            Point cp = fc;
            for (auto j : coords)
                if (j != i) cp[j] = fc[j] / fc[i];
            child.probe_points.push_back(cp);
        }
        children.push_back(std::move(child));
    }
    return children;
}

} // namespace desing

#include "desing/invariant.hpp"

namespace desing {

bool prefix_equal(const std::vector<ExtRat>& a, const std::vector<ExtRat>& b, std::size_t len) {
    if (a.size() < len || b.size() < len) return false;
    return std::equal(a.begin(), a.begin() + static_cast<long>(len), b.begin());
}

InvValue parse_inv(const std::string& text) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw InputError("bad inv: " + text);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text.substr(1, text.size() - 2)) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    parts.push_back(cur);
    InvValue v;
    if (parts.size() == 1 && parts[0] == "0") {
        v.off_x = true;
        return v;
    }
    if (parts.size() % 2 == 0) throw InputError("bad inv: " + text);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2)
        v.pairs.push_back({parse_rat(parts[i]), std::stoull(parts[i + 1])});
    if (parts.back() == "inf")
        v.terminal_infinite = true;
    else if (parts.back() == "0")
        v.terminal_infinite = false;
    else
        throw InputError("bad inv terminal: " + text);
    return v;
}

ContactChoice choose_maximal_contact(const MarkedIdeal& j, const std::vector<Poly>& block) {
    const std::size_t n = j.nvars();
    const std::uint64_t d = j.mark;
    std::optional<std::tuple<std::size_t, int, std::size_t, Monomial>> best_key;
    ContactChoice best;
    std::vector<std::vector<Rat>> base_rows;
    for (auto c : j.n_coords) base_rows.push_back(unit_vector(n, c));
    for (const auto& h : block) base_rows.push_back(h.linear_part());

    for (std::size_t gi = 0; gi < j.generators.size(); ++gi) {
        const auto& gen = j.generators[gi];
        if (gen.ord() != ExtNat(d)) continue;
        Poly g;
        try {
            g = gen.expanded();
        } catch (const ResourceError&) {
            continue; // other generators may still give a candidate
        }
        std::set<Monomial> alphas;
        const Poly gd = g.homogeneous_part(d);
        for (const auto& [beta, c] : gd.terms())
            for (std::size_t i = 0; i < n; ++i)
                if (beta[i] > 0) {
                    Monomial a = beta;
                    --a[i];
                    alphas.insert(a);
                }
        for (const auto& alpha : alphas) {
            Poly h = derivative(g, alpha);
            if (ord_at_origin(h) != ExtNat(1)) continue;
            auto rows = base_rows;
            rows.push_back(h.linear_part());
            if (!independent(rows)) continue;
            auto lin = h.linear_part();
            for (std::size_t v = 0; v < n; ++v) {
                if (sgn(lin[v]) == 0 || std::binary_search(j.n_coords.begin(), j.n_coords.end(), v)) continue;
                auto cs = coefficients_wrt(h, v);
                Shear sh{v, Poly(n), std::nullopt};
                Rat coeff = lin[v];
                int kind = 0;
                if (cs.size() == 2 && cs[1].is_constant()) {
                    sh.q = cs[0] * (Rat(1) / coeff);
                    kind = sh.q.is_zero() ? 0 : 1;
                } else if (auto root = polynomial_root(h, v)) {
                    // h = (x_v - root) * unit.
                    sh.q = -*root;
                    kind = sh.q.is_zero() ? 0 : 2;
                } else if (cs.size() == 2) {
                    // h = u * x_v + q with a non-constant unit u.
                    sh.u = cs[1];
                    sh.q = cs[0];
                    coeff = Rat(1);
                    kind = 3;
                } else {
                    continue;
                }
                std::tuple<std::size_t, int, std::size_t, Monomial> key{v, kind, gi, alpha};
                if (!best_key || key < *best_key) {
                    best_key = key;
                    best = {sh, gi, coeff};
                }
            }
        }
    }
    if (!best_key) throw MaxContactNotFound("no maximal contact hypersurface of order one found (mark " + std::to_string(d) + ")");
    return best;
}

namespace detail {

inline std::vector<Poly> polys_of(const std::vector<std::string>& ids, const std::map<std::string, Poly>& polys) {
    std::vector<Poly> out;
    for (const auto& id : ids) out.push_back(polys.at(id));
    return out;
}

inline std::vector<BlockDivisor> block_of(const std::vector<std::string>& ids,
                                          const std::map<std::string, Poly>& polys) {
    std::vector<BlockDivisor> out;
    for (const auto& id : ids) out.push_back({id, polys.at(id)});
    return out;
}

inline std::vector<ExtRat> partial_flat(const std::vector<std::pair<Rat, std::uint64_t>>& pairs, const Rat& nu) {
    std::vector<ExtRat> v;
    for (const auto& [a, s] : pairs) {
        v.push_back(ExtRat::of(a));
        v.push_back(ExtRat::of(Rat(static_cast<unsigned long>(s))));
    }
    v.push_back(ExtRat::of(nu));
    return v;
}

} // namespace detail

std::vector<std::string> monomial_centre_divisors(const InvChain& ch) {
    const auto& last = ch.levels.back();
    auto sp = split(last.ideal);
    std::vector<std::pair<std::string, std::uint64_t>> cand;
    for (const auto& [id, e] : sp->exponents) cand.push_back({id, e});
    std::sort(cand.begin(), cand.end(), [&](const auto& x, const auto& y) {
        return std::tuple(ch.block_year.at(x.first), ch.birth_year.at(x.first), x.first) <
               std::tuple(ch.block_year.at(y.first), ch.birth_year.at(y.first), y.first);
    });
    const std::size_t m = cand.size();
    if (m > 20) throw ResourceError("too many divisors in the monomial case");
    for (std::size_t size = 1; size <= m; ++size) {
        std::vector<bool> pick(m, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        // Lexicographic over positions in age order gives the oldest subset first.
        do {
            std::uint64_t sum = 0;
            std::vector<std::string> ids;
            for (std::size_t i = 0; i < m; ++i)
                if (pick[i]) {
                    sum += cand[i].second;
                    ids.push_back(cand[i].first);
                }
            if (sum >= last.ideal.mark) return ids;
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    throw EngineError("monomial case without a centre");
}

CoordSubspace extract_centre(const InvChain& ch, const Scene& scene) {
    if (ch.value.off_x) throw InputError("no centre: point is not on X");
    if (!ch.at_origin()) throw InputError("centre extraction needs the point at the chart origin");
    CoordSubspace c{ch.chart_id, ch.frame, ch.n_coords};
    if (!ch.value.terminal_infinite) {
        std::vector<Poly> hs;
        for (const auto& id : monomial_centre_divisors(ch)) hs.push_back(ch.frame.to(scene.divisor(id)->poly));
        c.coords = adjoin_coordinates(c.frame, c.coords, hs);
    }
    return c;
}

std::vector<NormalFormEntry> normal_form(const InvChain& ch, const Scene& scene) {
    if (!ch.list_presentation) throw UnsupportedError("normal form needs a list presentation at level 0");
    const std::size_t n = scene.nvars();
    std::vector<NormalFormEntry> out;
    std::vector<std::size_t> earlier;
    for (const auto& lv : ch.levels) {
        if (!lv.max_contact) break;
        const Gen& g = *lv.contact_gen;
        if (lv.companion->mark != 1 || g.power != 1) throw UnsupportedError("normal form needs mark one");
        Poly src;
        if (auto* d = scene.divisor(g.source))
            src = d->poly.translate(ch.point);
        else {
            auto it = std::find_if(scene.x_factors.begin(), scene.x_factors.end(),
                                   [&](const XFactor& f) { return f.id == g.source; });
            if (it == scene.x_factors.end()) throw UnsupportedError("generator without a single source");
            src = it->poly.translate(ch.point);
        }
        NormalFormEntry e;
        e.source = g.source;
        e.frame_var = *lv.max_contact;
        // Level frame -> chart -> final frame.
        auto to_final = [&](const Poly& p) {
            Frame after = lv.frame;
            if (lv.shear) after.push(*lv.shear);
            return ch.frame.to(after.from(p));
        };
        e.coordinate = to_final(Poly::variable(n, e.frame_var) * (g.scale * lv.contact_coeff));
        Poly m = g.monomial.value_or(Poly::constant(n, Rat(1)));
        Frame at = lv.frame;
        e.monomial = ch.frame.to(at.from(m));
        Poly gf = ch.frame.to(src);
        e.xi = gf - e.coordinate * e.monomial;
        e.verified = e.xi.restrict_zero(earlier).is_zero();
        earlier.push_back(e.frame_var);
        std::sort(earlier.begin(), earlier.end());
        out.push_back(std::move(e));
    }
    return out;
}

unsigned truncation_birth(const std::vector<ExtRat>& current, std::size_t len, unsigned year, const std::vector<InvValue>& history) {
    unsigned birth = year;
    for (std::size_t back = 0; back < history.size() && back < year; ++back) {
        const auto& h = history[history.size() - 1 - back];
        if (!prefix_equal(h.flatten(), current, len)) break;
        birth = year - static_cast<unsigned>(back) - 1;
    }
    return birth;
}

InvChain compute_inv(const Scene& scene, const Point& a, const std::vector<InvValue>& history, const InvOptions& opts) {
    const std::size_t n = scene.nvars();
    if (a.size() != n) throw InputError("point dimension mismatch");
    InvChain ch;
    ch.chart_id = scene.chart_id;
    ch.year = scene.year;
    ch.point = a;
    ch.variables = scene.variables;
    ch.frame = Frame(n);

    std::vector<Gen> factors;
    for (const auto& f : scene.x_factors) {
        Poly t = f.poly.translate(a);
        if (sgn(t.constant_term()) != 0) continue;
        factors.push_back(Gen{t, 1, f.id});
        ch.factors_through.push_back(f.id);
    }
    if (factors.empty()) {
        ch.value.off_x = true;
        return ch;
    }
    std::map<std::string, Poly> dpoly;
    std::vector<std::string> through;
    for (const auto& d : scene.divisors) {
        Poly t = d.poly.translate(a);
        if (sgn(t.constant_term()) != 0) continue;
        dpoly[d.id] = t;
        through.push_back(d.id);
        ch.block_year[d.id] = d.block_birth_year;
        ch.birth_year[d.id] = d.birth_year;
    }
    std::sort(through.begin(), through.end(), [&](const std::string& x, const std::string& y) {
        return std::tuple(ch.block_year[x], ch.birth_year[x], x) < std::tuple(ch.block_year[y], ch.birth_year[y], y);
    });

    // The polynomials of an input chart were rewritten by recorded shears; start from the original coordinates.
    if (!scene.parent) {
        auto shears = centred_shears(scene.coordinate_changes, a);
        for (auto it = shears.rbegin(); it != shears.rend(); ++it) {
            if (!it->is_plain()) throw UnsupportedError("recorded unit shear on an input chart");
            Shear undo{it->var, -it->q, std::nullopt};
            ch.frame.push(undo);
            for (auto& g : factors) g.base = shear_poly(g.base, undo);
            for (auto& [id, p] : dpoly) p = shear_poly(p, undo);
        }
    }

    auto split_blocks = [&](const std::vector<std::string>& block, unsigned birth) {
        std::pair<std::vector<std::string>, std::vector<std::string>> r;
        for (const auto& id : block) (ch.block_year[id] <= birth ? r.first : r.second).push_back(id);
        return r;
    };

    // Level 0.
    InvLevel l0;
    l0.frame = ch.frame;
    Poly residual = Poly::constant(n, Rat(1));
    bool all_linear = true;
    for (const auto& g : factors) {
        residual *= g.base;
        if (ord_at_origin(g.base) != ExtNat(1)) all_linear = false;
    }
    // The exceptional part of I^0 is carried by the block and the scene's multiplicities.
    l0.ideal = MarkedIdeal{scene.chart_id, {}, detail::block_of(through, dpoly), {Gen{residual, 1, "X"}}, 1};
    const std::uint64_t nu1 = ord_at_origin(residual).value();
    l0.nu = ExtRat::of(Rat(static_cast<unsigned long>(nu1)));
    l0.birth = truncation_birth(detail::partial_flat({}, l0.nu.value), 1, scene.year, history);
    std::tie(l0.old_block, l0.new_block) = split_blocks(through, l0.birth);
    l0.s = l0.old_block.size();
    MarkedIdeal j{scene.chart_id, {}, detail::block_of(l0.new_block, dpoly), {}, 1};
    ch.list_presentation = opts.list_presentation && all_linear;
    if (ch.list_presentation) {
        j.generators = factors;
    } else {
        j.generators = {Gen{residual, 1, factors.size() == 1 ? factors[0].source : "X"}};
        j.mark = nu1;
    }
    l0.companion = j = normalize(j);
    ch.levels.push_back(l0);
    std::vector<std::pair<Rat, std::uint64_t>> pairs{{l0.nu.value, l0.s}};

    std::vector<std::size_t> n_coords;
    std::vector<std::string> old_block = ch.levels[0].old_block, new_block = ch.levels[0].new_block;
    for (std::size_t k = 1;; ++k) {
        if (k > n) throw EngineError("inv: codimension exceeds dimension");
        auto& prev = ch.levels.back();
        auto mc = choose_maximal_contact(j, detail::polys_of(new_block, dpoly));
        const std::size_t var = mc.shear.var;
        prev.max_contact = var;
        prev.contact_gen = j.generators[mc.gen];
        prev.contact_coeff = mc.coeff;
        if (!mc.shear.q.is_zero() || !mc.shear.is_plain()) {
            const Shear& sh = mc.shear;
            prev.shear = sh;
            ch.frame.push(sh);
            for (auto& g : j.generators) {
                g.base = shear_poly(g.base, sh);
                if (g.monomial) g.monomial = shear_poly(*g.monomial, sh);
            }
            for (auto& b : j.block) b.poly = shear_poly(b.poly, sh);
            for (auto& [id, p] : dpoly) p = shear_poly(p, sh);
            j = normalize(j);
        }
        InvLevel lk;
        lk.frame = ch.frame;
        lk.ideal = coeff_ideal_plus_boundary(j, var, detail::block_of(old_block, dpoly),
                                             detail::block_of(new_block, dpoly));
        n_coords = lk.ideal.n_coords;
        auto sp = split(lk.ideal);
        for (const auto& id : new_block) lk.mu[id] = Rat(0);
        if (!sp) {
            lk.nu = ExtRat::inf();
            ch.levels.push_back(lk);
            ch.value.terminal_infinite = true;
            break;
        }
        for (const auto& [id, e] : sp->exponents)
            lk.mu[id] = Rat(static_cast<unsigned long>(e)) / Rat(static_cast<unsigned long>(lk.ideal.mark));
        MarkedIdeal res = lk.ideal;
        res.generators = sp->residual;
        auto o = res.ord_at_origin();
        if (o.is_infinite()) throw EngineError("inv: residual vanishes identically");
        if (o.value() == 0) {
            lk.nu = ExtRat::of(Rat(0));
            ch.levels.push_back(lk);
            ch.value.terminal_infinite = false;
            break;
        }
        Rat nu = Rat(static_cast<unsigned long>(o.value())) / Rat(static_cast<unsigned long>(lk.ideal.mark));
        lk.nu = ExtRat::of(nu);
        lk.birth = truncation_birth(detail::partial_flat(pairs, nu), 2 * k + 1, scene.year, history);
        std::tie(lk.old_block, lk.new_block) = split_blocks(new_block, lk.birth);
        lk.s = lk.old_block.size();
        old_block = lk.old_block;
        new_block = lk.new_block;
        pairs.push_back({nu, lk.s});
        auto comp = companion(lk.ideal);
        if (!std::holds_alternative<MarkedIdeal>(comp)) throw EngineError("inv: companion is terminal");
        j = std::get<MarkedIdeal>(comp);
        j.block = detail::block_of(new_block, dpoly);
        for (auto& b : j.block) b.poly = b.poly.restrict_zero(j.n_coords);
        lk.companion = j;
        ch.levels.push_back(lk);
    }
    ch.value.pairs = pairs;
    ch.n_coords = n_coords;
    return ch;
}

std::vector<std::size_t> adjoin_coordinates(Frame& frame, std::vector<std::size_t> coords, std::vector<Poly> polys) {
    const std::size_t n = frame.nvars();
    for (std::size_t i = 0; i < polys.size(); ++i) {
        Poly h = polys[i].restrict_zero(coords);
        if (ord_at_origin(h) != ExtNat(1)) throw UnsupportedError("centre component is not smooth on N");
        auto lin = h.linear_part();
        bool done = false;
        for (std::size_t v = 0; v < n && !done; ++v) {
            if (sgn(lin[v]) == 0 || std::binary_search(coords.begin(), coords.end(), v)) continue;
            auto cs = coefficients_wrt(h, v);
            Shear sh{v, Poly(n), std::nullopt};
            if (cs.size() == 2 && cs[1].is_constant()) sh.q = cs[0] * (Rat(1) / lin[v]);
            else if (auto root = polynomial_root(h, v)) sh.q = -*root;
            else if (cs.size() == 2) sh = Shear{v, cs[0], cs[1]};
            else continue;
            if (!sh.q.is_zero() || !sh.is_plain()) {
                frame.push(sh);
                for (auto& p : polys) p = shear_poly(p, sh);
            }
            coords.insert(std::upper_bound(coords.begin(), coords.end(), v), v);
            done = true;
        }
        if (!done) throw UnsupportedError("cannot make a centre component a coordinate");
    }
    return coords;
}

} // namespace desing

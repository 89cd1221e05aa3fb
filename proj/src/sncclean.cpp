#include "desing/sncclean.hpp"

#include <random>

namespace desing {

std::size_t sigma_p(const Scene& s, const Point& a) {
    std::size_t k = 0;
    for (const auto& f : s.x_factors)
        if (sgn(f.poly.evaluate(a)) == 0) ++k;
    return k;
}

bool snc_direct(const Scene& s, const Point& a) {
    std::vector<Poly> through;
    bool on_x = false;
    for (const auto& f : s.x_factors) {
        Poly t = f.poly.translate(a);
        if (sgn(t.constant_term()) == 0) {
            through.push_back(t);
            on_x = true;
        }
    }
    if (!on_x) return true;
    for (const auto& d : s.divisors) {
        Poly t = d.poly.translate(a);
        if (sgn(t.constant_term()) == 0) through.push_back(t);
    }
    return linear_forms_independent_at_origin(through);
}

InvValue special_inv(const SpecialValue& sv) {
    InvValue v;
    const std::size_t r = sv.r();
    if (sv.s.size() > r) throw InputError("special value with more blocks than pairs");
    for (std::size_t i = 0; i < r; ++i)
        v.pairs.push_back({i == 0 ? Rat(static_cast<unsigned long>(sv.p)) : Rat(1), i < sv.s.size() ? sv.s[i] : 0});
    v.terminal_infinite = true;
    return v;
}

std::optional<SpecialValue> is_special_value(const InvValue& v) {
    if (v.off_x || !v.terminal_infinite || v.pairs.empty()) return std::nullopt;
    const Rat& p = v.pairs[0].first;
    if (!is_integer(p) || sgn(p) <= 0) return std::nullopt;
    SpecialValue sv;
    sv.p = p.get_num().get_ui();
    for (std::size_t i = 1; i < v.pairs.size(); ++i)
        if (v.pairs[i].first != 1) return std::nullopt;
    for (const auto& pr : v.pairs) sv.s.push_back(pr.second);
    while (sv.s.size() > 1 && sv.s.back() == 0) sv.s.pop_back();
    if (sv.r() != v.pairs.size()) return std::nullopt;
    return sv;
}

std::vector<InvValue> special_ladder(std::size_t n) {
    std::vector<InvValue> out;
    std::vector<std::uint64_t> s;
    std::function<void(std::uint64_t, std::size_t)> rec = [&](std::uint64_t p, std::size_t budget) {
        if (!s.empty() && (s.size() == 1 || s.back() != 0)) {
            SpecialValue sv{p, s};
            if (sv.s.size() <= sv.r()) out.push_back(special_inv(sv));
        }
        if (s.size() == n) return;
        for (std::uint64_t x = 0; x <= budget; ++x) {
            s.push_back(x);
            rec(p, budget - x);
            s.pop_back();
        }
    };
    for (std::uint64_t p = 1; p <= n; ++p) rec(p, n);
    std::sort(out.begin(), out.end(), [](const InvValue& a, const InvValue& b) { return a > b; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool char_snc(const InvChain& ch) {
    if (ch.value.off_x) return true;
    auto sv = is_special_value(ch.value);
    if (!sv || sv->p != ch.sigma()) return false;
    for (std::size_t k = 1; k < ch.levels.size(); ++k)
        for (const auto& [id, mu] : ch.levels[k].mu)
            if (sgn(mu) != 0) return false;
    return true;
}

std::vector<Point> sample_points(const CoordSubspace& c, std::size_t count, unsigned seed) {
    const std::size_t n = c.frame.nvars();
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    std::vector<Point> pts;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Poly> fp;
        for (std::size_t j = 0; j < n; ++j) {
            Rat v(0);
            if (!std::binary_search(c.coords.begin(), c.coords.end(), j)) {
                int a = num(rng);
                if (a == 0) a = 1;
                v = Rat(a, den(rng));
                v.canonicalize();
            }
            fp.push_back(Poly::constant(n, v));
        }
        Point p;
        for (const auto& t : c.frame.to_frame()) p.push_back(t.substitute(fp).constant_term());
        pts.push_back(std::move(p));
    }
    return pts;
}

CleaningPlan monomial_desing_plan(const InvChain& ch, const Scene& scene, std::size_t k) {
    if (!ch.at_origin()) throw InputError("cleaning needs the point at the chart origin");
    if (k == 0 || k >= ch.levels.size()) throw InputError("cleaning level out of range");
    const auto& lv = ch.levels[k];
    if (lv.ideal.mark != 1) throw UnsupportedError("cleaning a level with mark above one");
    if (!ch.frame.is_polynomial()) throw UnsupportedError("cleaning in a frame with unit shears");
    CleaningPlan plan;
    plan.k = k;
    std::vector<std::string> ids;
    for (const auto& [id, mu] : lv.mu)
        if (sgn(mu) > 0) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
        return std::tuple(ch.block_year.at(a), ch.birth_year.at(a), a) <
               std::tuple(ch.block_year.at(b), ch.birth_year.at(b), b);
    });
    const auto& e_next = lv.old_block;
    const std::size_t p = ch.sigma();
    for (const auto& id : ids) {
        CleaningEntry e;
        e.divisor = id;
        e.mu = lv.mu.at(id);
        e.centre = CoordSubspace{ch.chart_id, lv.frame, lv.ideal.n_coords};
        e.centre.coords = adjoin_coordinates(e.centre.frame, e.centre.coords, {lv.frame.to(scene.divisor(id)->poly)});
        e.case_two = std::find(e_next.begin(), e_next.end(), id) != e_next.end();
        for (const auto& pt : sample_points(e.centre))
            if (sigma_p(scene, pt) != p) e.in_sigma_p = false;
        plan.entries.push_back(std::move(e));
    }
    return plan;
}

CleaningStep cleaning_step(const Scene& scene, const CleaningPlan& plan, const CleaningEntry& e) {
    const DivisorComponent* h = scene.divisor(e.divisor);
    if (!h) throw InputError("unknown divisor " + e.divisor);
    std::optional<unsigned> relabel;
    if (e.case_two) relabel = h->block_birth_year;
    CleaningStep st;
    st.children = blowup_charts(scene, e.centre, BlowupTag::cleaning, relabel);
    bool found = false;
    for (std::size_t i = 0; i < st.children.size(); ++i) {
        const auto* hc = st.children[i].divisor(e.divisor);
        if (hc && sgn(hc->poly.constant_term()) != 0) {
            st.follow = i;
            found = true;
        }
    }
    if (!found) throw EngineError("cleaning: no chart moves " + e.divisor + " off the origin");
    st.trace = "clean k=" + std::to_string(plan.k) + " H=" + e.divisor + " centre=" +
               e.centre.describe(scene.variables) + " case=" + (e.case_two ? "2" : "1") +
               " mu_before=" + to_string(e.mu);
    return st;
}

} // namespace desing

#include "desing/driver.hpp"

namespace desing {

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::A: return "A";
    case Algorithm::C: return "C";
    case Algorithm::CVariant: return "C-variant";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& s) {
    if (s == "A") return Algorithm::A;
    if (s == "C") return Algorithm::C;
    if (s == "C-variant") return Algorithm::CVariant;
    throw InputError("unknown algorithm '" + s + "' (expected A, C or C-variant)");
}

std::string point_str(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
    return s + ")";
}

std::vector<std::string> trace_rows(const InvChain& ch, const Scene& scene) {
    const auto& names = scene.variables;
    std::vector<std::string> rows;
    auto paren = [&](const Poly& p) {
        std::string s = to_string(p, names);
        return p.terms().size() > 1 ? "(" + s + ")" : s;
    };
    auto ids_str = [&](const std::vector<std::string>& ids) {
        std::string out;
        for (const auto& id : ids) {
            if (!out.empty()) out += ", ";
            out += "(" + to_string(scene.divisor(id)->poly.translate(ch.point), names) + "=0)";
        }
        return out;
    };
    for (std::size_t k = 0; k < ch.levels.size(); ++k) {
        const auto& lv = ch.levels[k];
        std::string ideal;
        if (k == 0) {
            std::string prod;
            for (const auto& d : scene.divisors)
                if (auto m = scene.multiplicity(d.id)) {
                    Poly t = d.poly.translate(ch.point);
                    if (sgn(t.constant_term()) != 0) continue;
                    prod += (prod.empty() ? "" : "*") + paren(t) + (m > 1 ? "^" + std::to_string(m) : "");
                }
            for (const auto& f : scene.x_factors) {
                Poly t = f.poly.translate(ch.point);
                if (sgn(t.constant_term()) != 0) continue;
                prod += (prod.empty() ? "" : "*") + (prod.empty() && scene.x_factors.size() == 1 ? to_string(t, names) : paren(t));
            }
            ideal = "(" + (prod.empty() ? std::string("1") : prod) + ",1)";
        } else {
            ideal = to_string(lv.ideal, names);
        }
        std::string row = std::to_string(k) + " | " + ideal;
        if (lv.companion) {
            row += " | " + to_string(*lv.companion, names);
            std::string mc;
            if (lv.max_contact && k + 1 < ch.levels.size()) {
                CoordSubspace n_next{ch.chart_id, ch.levels[k + 1].frame, ch.levels[k + 1].ideal.n_coords};
                if (n_next.codim() == names.size()) {
                    mc = "(";
                    for (const auto& v : names) mc += v + "=";
                    mc += "0)";
                } else {
                    mc = n_next.describe(names);
                    mc = "(" + mc.substr(1, mc.size() - 2) + ")";
                }
            }
            row += " | " + mc + " | " + ids_str(lv.old_block);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string chart_map_str(const Scene& s) {
    if (s.parent_map.empty()) return "";
    std::string out = "(";
    for (std::size_t i = 0; i < s.parent_map.size(); ++i)
        out += (i ? "," : "") + to_string(s.parent_map[i], s.variables);
    return out + ")";
}

namespace detail {

struct Candidate {
    std::string chart;
    std::size_t probe = 0;
    Point point;
    InvValue inv;
};

class Runner {
  public:
    Runner(ResolutionTree& tree, const RunOptions& opts) : tree_(tree), opts_(opts) { res_.algorithm = opts.algorithm; }

    RunResult run() {
        for (std::size_t step = 0; step < opts_.max_steps; ++step) {
            auto cand = candidates();
            if (!cand) {
                res_.terminated = true;
                res_.reason = "every probe point is snc or off X";
                finish();
                return res_;
            }
            const Scene& s = tree_.scene(cand->chart);
            if (s.year >= opts_.max_years) {
                res_.reason = "year cap " + std::to_string(opts_.max_years) + " reached at " + cand->chart +
                              " with inv " + cand->inv.str();
                finish();
                return res_;
            }
            check_ladder(*cand);
            dispatch(*cand);
        }
        res_.reason = "step cap reached";
        finish();
        return res_;
    }

  private:
    ResolutionTree& tree_;
    RunOptions opts_;
    RunResult res_;
    std::set<std::string> stuck_;
    std::vector<InvValue> rungs_;

    std::optional<Candidate> candidates() {
        std::optional<Candidate> best;
        for (const auto& id : tree_.frontier()) {
            const Scene& s = tree_.scene(id);
            auto pts = s.all_probe_points();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (snc_direct(s, pts[i])) continue;
                if (stuck_.count(id + "|" + point_str(pts[i]))) continue;
                const auto& ch = tree_.chain(s, pts[i]);
                Candidate c{id, i, pts[i], ch.value};
                if (!best || c.inv > best->inv) best = c;
            }
        }
        return best;
    }

    void check_ladder(const Candidate& c) {
        if (opts_.algorithm == Algorithm::A || rungs_.empty()) return;
        if (c.inv > rungs_.back())
            res_.violations.push_back("inv " + c.inv.str() + " at " + c.chart + " exceeds processed rung " +
                                      rungs_.back().str());
    }

    /// Chart whose origin is the candidate point.
    std::string centred(const Candidate& c) {
        bool origin = std::all_of(c.point.begin(), c.point.end(), [](const Rat& r) { return sgn(r) == 0; });
        return origin ? c.chart : tree_.recentre(c.chart, c.point);
    }

    void record(const std::string& chart, const InvChain& ch, const CoordSubspace& centre, BlowupTag tag,
                const std::vector<std::string>& kids, const std::string& note = "") {
        const Scene& s = tree_.scene(chart);
        BlowupEvent e;
        e.year = s.year;
        e.chart = chart;
        e.point = ch.point;
        e.inv = ch.value;
        e.centre = centre.describe(s.variables);
        e.codim = centre.codim();
        e.tag = tag;
        e.children = kids;
        e.note = note;
        e.table = trace_rows(ch, s);
        e.chart_map = chart_map_str(s);
        res_.events.push_back(std::move(e));
        check_semicontinuity(ch.value, kids);
    }

    void check_semicontinuity(const InvValue& before, const std::vector<std::string>& kids) {
        for (const auto& k : kids) {
            const Scene& s = tree_.scene(k);
            const auto& v = tree_.chain(s, origin(s.nvars())).value;
            if (v > before)
                res_.violations.push_back("inv increased from " + before.str() + " to " + v.str() + " at " + k);
        }
    }

    bool contains_snc_point(const Scene& s, const CoordSubspace& c) {
        for (const auto& pt : sample_points(c))
            if (snc_direct(s, pt)) return true;
        return false;
    }

    void check_probes_off_centre(const Scene& s, const CoordSubspace& c) {
        for (const auto& pt : s.all_probe_points())
            if (c.contains_point(pt) && snc_direct(s, pt))
                res_.violations.push_back("centre " + c.describe(s.variables) + " in " + s.chart_id +
                                          " contains the snc probe point " + point_str(pt));
    }

    void standard(const std::string& id, BlowupTag tag = BlowupTag::standard) {
        const Scene& s = tree_.scene(id);
        const InvChain ch = tree_.chain(s, origin(s.nvars()));
        auto centre = extract_centre(ch, s);
        if (opts_.algorithm != Algorithm::A) {
            if (contains_snc_point(s, centre))
                res_.violations.push_back("centre " + centre.describe(s.variables) + " in " + id + " contains snc points");
            check_probes_off_centre(s, centre);
        }
        auto kids = tree_.blow_up(id, centre, tag);
        record(id, ch, centre, tag, kids);
    }

    void dispatch(const Candidate& c) {
        std::string id = centred(c);
        if (opts_.algorithm == Algorithm::A) return standard(id);
        const Scene& s = tree_.scene(id);
        const InvChain ch = tree_.chain(s, origin(s.nvars()));
        auto sv = is_special_value(ch.value);
        if (!sv) return standard(id);
        auto centre = extract_centre(ch, s);
        bool blow = false;
        if (opts_.algorithm == Algorithm::C) {
            blow = !contains_snc_point(s, centre);
        } else {
            blow = ch.sigma() != sv->p;
            for (const auto& pt : sample_points(centre))
                if (sigma_p(s, pt) == sv->p) blow = false;
        }
        if (blow) return standard(id, BlowupTag::non_snc_component);
        clean(id, ch, *sv);
    }

    void clean(std::string id, const InvChain& start, const SpecialValue& sv) {
        const std::size_t r = start.value.pairs.size();
        std::size_t blowups = 0;
        const auto flat = start.value.flatten();
        for (std::size_t k = r - 1; k >= 1; --k) {
            for (std::size_t guard = 0; guard < 64; ++guard) {
                const Scene& s = tree_.scene(id);
                const InvChain ch = tree_.chain(s, origin(s.nvars()));
                if (!prefix_equal(ch.value.flatten(), flat, 2 * k)) {
                    res_.violations.push_back("cleaning changed inv_" + std::to_string(k) + " at " + id);
                    break;
                }
                auto plan = monomial_desing_plan(ch, s, k);
                auto e = std::find_if(plan.entries.begin(), plan.entries.end(),
                                      [](const CleaningEntry& x) { return x.in_sigma_p; });
                if (e == plan.entries.end()) break;
                check_probes_off_centre(s, e->centre);
                auto step = cleaning_step(s, plan, *e);
                auto kids = tree_.blow_up(id, e->centre, BlowupTag::cleaning,
                                          e->case_two ? std::optional<unsigned>(s.divisor(e->divisor)->block_birth_year)
                                                      : std::nullopt);
                record(id, ch, e->centre, BlowupTag::cleaning, kids, step.trace);
                id = kids[step.follow];
                ++blowups;
            }
        }
        const Scene& s = tree_.scene(id);
        const auto& fin = tree_.chain(s, origin(s.nvars()));
        bool ok = char_snc(fin) && snc_direct(s, origin(s.nvars()));
        rungs_.push_back(special_inv(sv));
        res_.certificate.push_back("rung " + sv.str() + " = " + special_inv(sv).str() + " cleaned at " + id + " with " +
                                   std::to_string(blowups) + " blowing-up(s): " + (ok ? "snc" : "not snc"));
        if (blowups == 0) {
            stuck_.insert(start.chart_id + "|" + point_str(start.point));
            res_.violations.push_back("no cleaning blowing-up available at " + start.chart_id);
        }
    }

    void finish() {
        for (const auto& id : tree_.frontier()) {
            const Scene& s = tree_.scene(id);
            for (const auto& p : s.all_probe_points()) {
                ProbeStatus st{id, p, tree_.chain(s, p).value, snc_direct(s, p)};
                res_.final_probes.push_back(std::move(st));
            }
        }
        std::size_t n_snc = 0;
        for (const auto& p : res_.final_probes) n_snc += p.snc;
        res_.certificate.push_back("probes: " + std::to_string(res_.final_probes.size()) + ", snc or off X: " +
                                   std::to_string(n_snc));
        if (res_.violations.empty()) res_.certificate.push_back("invariant checks: ok");
    }
};

} // namespace detail

RunResult run(ResolutionTree& tree, const RunOptions& opts) { return detail::Runner(tree, opts).run(); }

RunResult run(const Scene& root, const RunOptions& opts) {
    ResolutionTree tree(root);
    return run(tree, opts);
}

std::vector<std::string> summary_lines(const RunResult& r) {
    std::vector<std::string> out;
    out.push_back("algorithm=" + to_string(r.algorithm));
    for (const auto& e : r.events) {
        std::string line = "year=" + std::to_string(e.year) + " chart=" + e.chart + " inv=" + e.inv.str() +
                           " centre=" + e.centre + " tag=" + to_string(e.tag);
        out.push_back(line);
        if (!e.note.empty()) out.push_back("  " + e.note);
    }
    out.push_back(std::string("terminated=") + (r.terminated ? "yes" : "no") + " snc=" + (r.all_snc() ? "yes" : "no"));
    return out;
}

Scene permute_variables(const Scene& root, const std::vector<std::size_t>& perm) {
    const std::size_t n = root.nvars();
    if (root.parent) throw InputError("permute_variables needs a root scene");
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted.size() != n || sorted[i] != i) throw InputError("not a permutation of the variables");
    std::vector<Poly> map;
    for (std::size_t i = 0; i < n; ++i) map.push_back(Poly::variable(n, perm[i]));
    Scene s = root;
    for (auto& f : s.x_factors) f.poly = f.poly.substitute(map);
    for (auto& d : s.divisors) d.poly = d.poly.substitute(map);
    for (auto& p : s.probe_points) {
        Point q(n);
        for (std::size_t i = 0; i < n; ++i) q[perm[i]] = p[i];
        p = q;
    }
    return s;
}

std::vector<std::string> event_signature(const RunResult& r) {
    std::vector<std::string> out;
    for (const auto& e : r.events)
        out.push_back(std::to_string(e.year) + " " + e.inv.str() + " " + std::to_string(e.codim) + " " +
                      to_string(e.tag));
    std::sort(out.begin(), out.end());
    return out;
}

bool determinism_check(const Scene& root, const std::vector<std::size_t>& perm, const RunOptions& opts) {
    auto a = run(root, opts);
    auto b = run(permute_variables(root, perm), opts);
    return a.terminated == b.terminated && event_signature(a) == event_signature(b);
}

} // namespace desing

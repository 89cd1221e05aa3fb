#pragma once

// Exact sparse multivariate polynomials over Q.
//
// A Poly knows only its variable count; names live with whoever owns the
// coordinate frame (a Scene) and are passed in for parsing and printing.
// Terms are kept in a std::map ordered graded-lexicographically (largest
// first), so equal polynomials have identical term maps.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace desing {

using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t monomial_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

/// Graded lexicographic order, largest monomial first.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        auto da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

/// Guardrails against blowup-driven degree growth.
struct Limits {
    std::uint64_t max_degree = 64;
    std::size_t max_terms = 100000;
};

inline Limits& limits() {
    static Limits l;
    return l;
}

/// Reads DESING_MAX_DEGREE / DESING_MAX_TERMS if set.
inline void load_limits_from_env() {
    if (const char* d = std::getenv("DESING_MAX_DEGREE")) limits().max_degree = std::strtoull(d, nullptr, 10);
    if (const char* t = std::getenv("DESING_MAX_TERMS")) limits().max_terms = std::strtoull(t, nullptr, 10);
}

class Poly {
  public:
    using TermMap = std::map<Monomial, Rat, GrlexGreater>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rat& c) {
        Poly p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }
    static Poly variable(std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw InputError("variable index out of range");
        Monomial m(nvars, 0);
        m[i] = 1;
        Poly p(nvars);
        p.add_term(std::move(m), Rat(1));
        return p;
    }
    static Poly monomial(Monomial m, const Rat& c = Rat(1)) {
        Poly p(m.size());
        p.add_term(std::move(m), c);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
    }
    Rat constant_term() const { return coefficient(Monomial(nvars_, 0)); }
    Rat coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    /// -1 for the zero polynomial.
    long total_degree() const {
        return terms_.empty() ? -1 : static_cast<long>(monomial_degree(terms_.begin()->first));
    }
    std::uint32_t degree_in(std::size_t i) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
        return d;
    }
    bool involves(std::size_t i) const { return degree_in(i) > 0; }
    const Rat& leading_coefficient() const {
        if (terms_.empty()) throw DomainError("leading coefficient of zero");
        return terms_.begin()->second;
    }

    void add_term(Monomial m, const Rat& c) {
        if (m.size() != nvars_) throw InputError("monomial arity mismatch");
        if (sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const Rat& s) {
        if (sgn(s) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_arity(b);
        Poly r(a.nvars_);
        Monomial m(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        r.check_limits();
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Poly pow(std::uint64_t e) const {
        Poly result = constant(nvars_, Rat(1)), base = *this;
        while (e) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    Rat evaluate(std::span<const Rat> point) const {
        if (point.size() != nvars_) throw InputError("evaluate: point dimension mismatch");
        Rat total(0);
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
            total += t;
        }
        return total;
    }

    /// Composition: every variable i replaced by images[i] (all images share one arity).
    Poly substitute(std::span<const Poly> images) const {
        if (images.size() != nvars_) throw InputError("substitute: need one image per variable");
        std::size_t out_vars = images.empty() ? 0 : images[0].nvars();
        for (const auto& im : images)
            if (im.nvars() != out_vars) throw InputError("substitute: image arity mismatch");
        // Cache powers per variable.
        std::vector<std::vector<Poly>> powers(nvars_);
        Poly result(out_vars);
        for (const auto& [m, c] : terms_) {
            Poly t = constant(out_vars, c);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(constant(out_vars, Rat(1)));
                while (pw.size() <= m[i]) pw.push_back(pw.back() * images[i]);
                t *= pw[m[i]];
            }
            result += t;
        }
        result.check_limits();
        return result;
    }

    /// f(x + a): moves the point a to the origin.
    Poly translate(std::span<const Rat> a) const {
        if (a.size() != nvars_) throw InputError("translate: point dimension mismatch");
        bool zero = std::all_of(a.begin(), a.end(), [](const Rat& r) { return sgn(r) == 0; });
        if (zero) return *this;
        std::vector<Poly> images;
        for (std::size_t i = 0; i < nvars_; ++i) images.push_back(variable(nvars_, i) + constant(nvars_, a[i]));
        return substitute(images);
    }

    Poly homogeneous_part(std::uint64_t d) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) == d) r.terms_.emplace(m, c);
        return r;
    }

    /// Coefficients of the degree-one terms, indexed by variable.
    std::vector<Rat> linear_part() const {
        std::vector<Rat> l(nvars_, Rat(0));
        for (const auto& [m, c] : terms_)
            if (monomial_degree(m) == 1)
                for (std::size_t i = 0; i < nvars_; ++i)
                    if (m[i] == 1) l[i] = c;
        return l;
    }

    /// Sets the listed variables to zero.
    Poly restrict_zero(std::span<const std::size_t> vars) const {
        Poly r(nvars_);
        for (const auto& [m, c] : terms_) {
            bool keep = std::none_of(vars.begin(), vars.end(), [&](std::size_t i) { return m[i] > 0; });
            if (keep) r.terms_.emplace(m, c);
        }
        return r;
    }

    /// Scalar multiple with coprime integer coefficients and positive leading coefficient.
    Poly primitive() const {
        if (is_zero()) return *this;
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [m, c] : terms_) {
            num_gcd = gcd(num_gcd, mpz_class(c.get_num()));
            den_lcm = lcm(den_lcm, mpz_class(c.get_den()));
        }
        Rat scale(den_lcm, num_gcd);
        scale.canonicalize();
        if (sgn(leading_coefficient()) < 0) scale = -scale;
        return *this * scale;
    }

    void check_limits() const {
        if (terms_.size() > limits().max_terms) throw ResourceError("polynomial term cap exceeded");
        if (!terms_.empty() && monomial_degree(terms_.begin()->first) > limits().max_degree)
            throw ResourceError("polynomial degree cap exceeded");
    }

  private:
    void check_arity(const Poly& o) const {
        if (o.nvars_ != nvars_) throw InputError("polynomial arity mismatch");
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Orders, divisibility, coefficients, derivatives.

inline ExtNat ord_at_origin(const Poly& f) {
    if (f.is_zero()) return ExtNat::infinity();
    std::uint64_t d = UINT64_MAX;
    for (const auto& [m, c] : f.terms()) d = std::min(d, monomial_degree(m));
    return ExtNat(d);
}

inline ExtNat ord_at_point(const Poly& f, std::span<const Rat> a) {
    if (a.size() != f.nvars()) throw InputError("ord_at_point: point dimension mismatch");
    return ord_at_origin(f.translate(a));
}

/// Largest k with x_i^k | f.
inline std::uint32_t ord_along_coordinate(const Poly& f, std::size_t i) {
    if (f.is_zero()) throw DomainError("order along a hypersurface of the zero polynomial");
    if (i >= f.nvars()) throw InputError("variable index out of range");
    std::uint32_t k = UINT32_MAX;
    for (const auto& [m, c] : f.terms()) k = std::min(k, m[i]);
    return k;
}

inline Poly divexact_coordinate(const Poly& f, std::size_t i, std::uint32_t k) {
    if (k == 0) return f;
    Poly r(f.nvars());
    for (const auto& [m0, c] : f.terms()) {
        Monomial m = m0;
        if (m[i] < k) throw DomainError("divexact_coordinate: not divisible");
        m[i] -= k;
        r.add_term(std::move(m), c);
    }
    return r;
}

/// f / g when g divides f in Q[x]; nullopt otherwise.
inline std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    const std::size_t n = f.nvars();
    const auto& [lm_g, lc_g] = *g.terms().begin();
    Poly q(n), r = f;
    while (!r.is_zero()) {
        const auto& [lm_r, lc_r] = *r.terms().begin();
        Monomial t(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (lm_r[i] < lm_g[i]) return std::nullopt;
            t[i] = lm_r[i] - lm_g[i];
        }
        Poly term = Poly::monomial(std::move(t), lc_r / lc_g);
        q += term;
        r -= term * g;
    }
    return q;
}

/// Largest k with h^k | f, for nonconstant h.
inline std::uint32_t ord_along(const Poly& f, const Poly& h) {
    if (f.is_zero()) throw DomainError("order along a hypersurface of the zero polynomial");
    if (h.is_constant()) throw DomainError("order along a unit");
    // Coordinate fast path.
    if (h.terms().size() == 1) {
        const auto& m = h.terms().begin()->first;
        if (monomial_degree(m) == 1)
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] == 1) return ord_along_coordinate(f, i);
    }
    std::uint32_t k = 0;
    Poly cur = f;
    while (auto q = divide_exact(cur, h)) {
        cur = std::move(*q);
        ++k;
    }
    return k;
}

/// (c_0, ..., c_m) with f = sum_j c_j x_i^j, each c_j free of x_i.
inline std::vector<Poly> coefficients_wrt(const Poly& f, std::size_t i) {
    std::vector<Poly> out(std::max<std::uint32_t>(f.degree_in(i), 0) + 1, Poly(f.nvars()));
    for (const auto& [m0, c] : f.terms()) {
        Monomial m = m0;
        auto j = m[i];
        m[i] = 0;
        out[j].add_term(std::move(m), c);
    }
    return out;
}

inline Poly partial_derivative(const Poly& f, std::size_t i, std::uint32_t order = 1) {
    Poly r(f.nvars());
    for (const auto& [m0, c] : f.terms()) {
        Monomial m = m0;
        if (m[i] < order) continue;
        Rat factor(1);
        for (std::uint32_t k = 0; k < order; ++k) factor *= (m[i] - k);
        m[i] -= order;
        r.add_term(std::move(m), c * factor);
    }
    return r;
}

/// Iterated derivative d^alpha f.
inline Poly derivative(const Poly& f, const Monomial& alpha) {
    Poly r = f;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i]) r = partial_derivative(r, i, alpha[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Text form: `z^3 + x*y`, `-3/2*x^2*y`.

inline std::string to_string(const Poly& f, std::span<const std::string> names) {
    if (names.size() != f.nvars()) throw InputError("to_string: name count mismatch");
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        bool neg = sgn(c) < 0;
        Rat a = neg ? Rat(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty())
            out += to_string(a);
        else if (a == 1)
            out += mono;
        else
            out += to_string(a) + "*" + mono;
    }
    return out;
}

namespace detail {

class PolyParser {
  public:
    PolyParser(const std::string& s, std::span<const std::string> names) : s_(s), names_(names) {}

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("polynomial parse error at " + std::to_string(pos_) + " in '" + s_ + "': " + msg);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    std::size_t n() const { return names_.size(); }

    Poly expr() {
        Poly acc(n());
        bool first = true;
        for (;;) {
            char c = peek();
            bool neg = false;
            if (c == '+' || c == '-') {
                neg = c == '-';
                ++pos_;
            } else if (!first) {
                break;
            }
            Poly t = term();
            acc += neg ? -t : t;
            first = false;
            c = peek();
            if (c != '+' && c != '-') break;
        }
        return acc;
    }

    bool starts_factor() {
        char c = peek();
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Poly term() {
        Poly acc = factor();
        for (;;) {
            if (peek() == '*') {
                ++pos_;
                acc *= factor();
            } else if (starts_factor()) {
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    std::uint64_t exponent() {
        if (peek() != '^') return 1;
        ++pos_;
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        return std::stoull(s_.substr(start, pos_ - start));
    }

    Poly factor() {
        char c = peek();
        Poly base(n());
        if (c == '(') {
            ++pos_;
            base = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::size_t dstart = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (dstart == pos_) fail("expected denominator");
            }
            base = Poly::constant(n(), parse_rat(s_.substr(start, pos_ - start)));
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            auto it = std::find(names_.begin(), names_.end(), id);
            if (it == names_.end()) fail("unknown variable '" + id + "'");
            base = Poly::variable(n(), static_cast<std::size_t>(it - names_.begin()));
        } else {
            fail("expected factor");
        }
        return base.pow(exponent());
    }

    const std::string& s_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly parse_poly(const std::string& text, std::span<const std::string> names) {
    return detail::PolyParser(text, names).parse();
}

/// Prints with variables x1, x2, ...
inline std::ostream& operator<<(std::ostream& os, const Poly& f) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < f.nvars(); ++i) names.push_back("x" + std::to_string(i + 1));
    return os << to_string(f, names);
}

} // namespace desing

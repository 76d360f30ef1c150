#ifndef MEANEXP_FACTOR_HPP
#define MEANEXP_FACTOR_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <meanexp/bigfloat.hpp>
#include <meanexp/error.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>
#include <meanexp/surd.hpp>

namespace meanexp
{

// Dense univariate polynomial over Q; c[k] multiplies x^k, no trailing zeros.
struct UPoly {
    std::vector<Rational> c;

    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs) : c(std::move(coeffs))
    {
        trim();
    }

    static UPoly from_poly(const Poly &p, const std::string &var)
    {
        for (const auto &v : p.variables()) {
            if (v != var) {
                throw SymbolicCoefficient("polynomial " + p.to_string() + " is not univariate in " + var);
            }
        }
        std::vector<Rational> out;
        for (const auto &k : p.coefficients_in(var)) {
            out.push_back(k.constant_value());
        }
        return UPoly(std::move(out));
    }
    Poly to_poly(const std::string &var) const
    {
        const Poly x = Poly::variable(var);
        Poly acc;
        for (auto k = c.size(); k-- > 0;) {
            acc = acc * x + Poly(c[k]);
        }
        return acc;
    }

    void trim()
    {
        while (!c.empty() && c.back().is_zero()) {
            c.pop_back();
        }
    }
    bool is_zero() const noexcept
    {
        return c.empty();
    }
    // -1 for the zero polynomial.
    long degree() const noexcept
    {
        return static_cast<long>(c.size()) - 1;
    }
    const Rational &lead() const
    {
        return c.back();
    }

    Rational eval(const Rational &x) const
    {
        Rational acc(0);
        for (auto k = c.size(); k-- > 0;) {
            acc = acc * x + c[k];
        }
        return acc;
    }
    BigFloat eval(const BigFloat &x) const
    {
        BigFloat acc(x.precision());
        for (auto k = c.size(); k-- > 0;) {
            acc = acc * x + BigFloat(c[k], x.precision());
        }
        return acc;
    }
    QuadraticSurd eval(const QuadraticSurd &x) const
    {
        QuadraticSurd acc;
        for (auto k = c.size(); k-- > 0;) {
            acc = acc * x + QuadraticSurd(c[k]);
        }
        return acc;
    }

    UPoly derivative() const
    {
        std::vector<Rational> out;
        for (std::size_t k = 1; k < c.size(); ++k) {
            out.push_back(c[k] * Rational(static_cast<long>(k)));
        }
        return UPoly(std::move(out));
    }

    friend UPoly operator-(const UPoly &a, const UPoly &b)
    {
        std::vector<Rational> out(std::max(a.c.size(), b.c.size()), Rational(0));
        for (std::size_t k = 0; k < a.c.size(); ++k) {
            out[k] += a.c[k];
        }
        for (std::size_t k = 0; k < b.c.size(); ++k) {
            out[k] -= b.c[k];
        }
        return UPoly(std::move(out));
    }
    friend UPoly operator*(const UPoly &a, const UPoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> out(a.c.size() + b.c.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            for (std::size_t j = 0; j < b.c.size(); ++j) {
                out[i + j] += a.c[i] * b.c[j];
            }
        }
        return UPoly(std::move(out));
    }
    friend bool operator==(const UPoly &, const UPoly &) = default;

    // Quotient and remainder.
    std::pair<UPoly, UPoly> divmod(const UPoly &d) const
    {
        if (d.is_zero()) {
            throw DivisionByZero("polynomial division by zero");
        }
        UPoly r = *this;
        std::vector<Rational> q(c.size() >= d.c.size() ? c.size() - d.c.size() + 1 : 0, Rational(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const auto shift = static_cast<std::size_t>(r.degree() - d.degree());
            const Rational f = r.lead() / d.lead();
            q[shift] = f;
            for (std::size_t k = 0; k < d.c.size(); ++k) {
                r.c[k + shift] -= f * d.c[k];
            }
            r.trim();
        }
        return {UPoly(std::move(q)), r};
    }

    UPoly monic() const
    {
        if (is_zero()) {
            return *this;
        }
        std::vector<Rational> out = c;
        const Rational l = lead();
        for (auto &x : out) {
            x /= l;
        }
        return UPoly(std::move(out));
    }

    // Scaled to coprime integer coefficients with positive leading term.
    UPoly primitive() const
    {
        if (is_zero()) {
            return *this;
        }
        mpz_class den = 1, num = 0;
        for (const auto &x : c) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.denominator().get_mpz_t());
        }
        for (const auto &x : c) {
            const mpz_class v = (x * Rational(den)).numerator();
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
        }
        Rational f = Rational(den) / Rational(num);
        if (lead().sign() < 0) {
            f = -f;
        }
        std::vector<Rational> out = c;
        for (auto &x : out) {
            x *= f;
        }
        return UPoly(std::move(out));
    }

    std::string to_string(const std::string &var) const
    {
        return to_poly(var).to_string();
    }
};

inline UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace detail
{

inline std::vector<UPoly> sturm_chain(const UPoly &p)
{
    std::vector<UPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        const auto r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) {
            break;
        }
        chain.push_back(UPoly() - r);
    }
    return chain;
}

inline int sign_changes(const std::vector<UPoly> &chain, const Rational &x)
{
    int changes = 0, last = 0;
    for (const auto &q : chain) {
        const int s = q.eval(x).sign();
        if (s != 0) {
            if (last != 0 && s != last) {
                ++changes;
            }
            last = s;
        }
    }
    return changes;
}

} // namespace detail

// An isolating interval (lo, hi] holding exactly one real root.
struct RootInterval {
    Rational lo, hi;
};

// Isolates the distinct real roots of p by Sturm sequences and refines each
// interval to width below 2^-bits.
inline std::vector<RootInterval> isolate_real_roots(const UPoly &p, unsigned bits)
{
    const UPoly sq = p.divmod(gcd(p, p.derivative())).first; // square-free part
    const auto chain = detail::sturm_chain(sq);
    Rational bound(1);
    for (std::size_t k = 0; k + 1 < sq.c.size(); ++k) {
        bound = std::max(bound, Rational(1) + (sq.c[k] / sq.lead()).abs());
    }
    std::vector<RootInterval> work{{-bound, bound}}, done;
    while (!work.empty()) {
        const auto iv = work.back();
        work.pop_back();
        const int n = detail::sign_changes(chain, iv.lo) - detail::sign_changes(chain, iv.hi);
        if (n == 0) {
            continue;
        }
        if (n == 1) {
            done.push_back(iv);
            continue;
        }
        const Rational mid = (iv.lo + iv.hi) / Rational(2);
        work.push_back({iv.lo, mid});
        work.push_back({mid, iv.hi});
    }
    Rational width(1);
    for (unsigned i = 0; i < bits; ++i) {
        width /= Rational(2);
    }
    for (auto &iv : done) {
        if (sq.eval(iv.hi).is_zero()) {
            iv.lo = iv.hi;
            continue;
        }
        // roots of the square-free part are simple, so the sign changes across each
        const int s_hi = sq.eval(iv.hi).sign();
        while (iv.hi - iv.lo > width) {
            const Rational mid = (iv.lo + iv.hi) / Rational(2);
            const int s_mid = sq.eval(mid).sign();
            if (s_mid == 0) {
                iv.lo = iv.hi = mid;
                break;
            }
            if (s_mid == s_hi) {
                iv.hi = mid;
            } else {
                iv.lo = mid;
            }
        }
    }
    std::sort(done.begin(), done.end(), [](const auto &a, const auto &b) { return a.lo < b.lo; });
    return done;
}

// Distinct rational roots, ascending. A root n/d in lowest terms has d
// dividing the leading coefficient of the primitive form, so it is a
// continued-fraction convergent of any point close enough to it.
inline std::vector<Rational> rational_roots(const UPoly &p)
{
    std::vector<Rational> roots;
    if (p.degree() < 1) {
        return roots;
    }
    const UPoly q = p.primitive();
    const mpz_class lead = abs(q.lead().numerator());
    const unsigned bits = static_cast<unsigned>(2 * mpz_sizeinbase(lead.get_mpz_t(), 2) + 4);
    for (const auto &iv : isolate_real_roots(q, bits)) {
        const Rational mid = (iv.lo + iv.hi) / Rational(2);
        // convergents h/k of mid
        mpz_class num = mid.numerator(), den = mid.denominator();
        mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
        while (den != 0) {
            mpz_class a;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            const mpz_class h_next = a * h_prev + h, k_next = a * k_prev + k;
            h = h_prev;
            k = k_prev;
            h_prev = h_next;
            k_prev = k_next;
            if (k_prev > lead) {
                break;
            }
            // an early convergent can be a different root of q
            const Rational cand(mpq_class(h_prev, k_prev));
            if (iv.lo <= cand && cand <= iv.hi && q.eval(cand).is_zero()) {
                roots.push_back(cand);
                break;
            }
            const mpz_class r = num - a * den;
            num = den;
            den = r;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct UFactor {
    UPoly poly;
    unsigned multiplicity = 1;
};

// Splits off all rational linear factors (primitive, with multiplicity); the
// rest is returned as one primitive cofactor when it is not constant. The
// leading constant is `unit`.
struct UFactorization {
    Rational unit{1};
    std::vector<UFactor> factors;
};

inline UFactorization factor_univariate(const UPoly &p)
{
    if (p.is_zero()) {
        throw DomainError("cannot factor the zero polynomial");
    }
    UFactorization out;
    UPoly rest = p;
    for (const auto &r : rational_roots(p)) {
        const UPoly lin = UPoly({-r, Rational(1)}).primitive();
        UFactor f{lin, 0};
        while (true) {
            auto [q, rem] = rest.divmod(lin);
            if (!rem.is_zero()) {
                break;
            }
            rest = std::move(q);
            ++f.multiplicity;
        }
        out.factors.push_back(std::move(f));
    }
    if (rest.degree() >= 1) {
        const UPoly prim = rest.primitive();
        out.factors.push_back({prim, 1});
        rest = rest.divmod(prim).first;
    }
    out.unit = rest.c.front();
    return out;
}

// Real roots of a quadratic without rational roots, as conjugate surds
// (smaller first). Empty when the discriminant is negative.
inline std::vector<QuadraticSurd> quadratic_roots(const UPoly &p)
{
    if (p.degree() != 2) {
        throw DomainError("quadratic_roots requires a degree-2 polynomial");
    }
    const Rational &a = p.c[2], &b = p.c[1], &c0 = p.c[0];
    const Rational disc = b * b - Rational(4) * a * c0;
    if (disc.sign() < 0) {
        return {};
    }
    // sqrt(n/d) = sqrt(n d) / d
    const mpz_class rad = disc.numerator() * disc.denominator();
    const Rational half = Rational(1) / (Rational(2) * a);
    const QuadraticSurd root(Rational(0), Rational(1) / Rational(disc.denominator()), rad);
    QuadraticSurd r1 = (QuadraticSurd(-b) - root) * QuadraticSurd(half);
    QuadraticSurd r2 = (QuadraticSurd(-b) + root) * QuadraticSurd(half);
    if ((r2 - r1).sign() < 0) {
        std::swap(r1, r2);
    }
    return {r1, r2};
}

// Factorization c * prod f_i^{e_i} of a polynomial over Q. Factors are
// primitive with integer coefficients and positive leading term.
struct PolyFactor {
    Poly poly;
    unsigned multiplicity = 1;
};

struct Factorization {
    Rational unit{1};
    std::vector<PolyFactor> factors;

    Poly expand() const
    {
        Poly acc(unit);
        for (const auto &f : factors) {
            acc *= f.poly.pow(f.multiplicity);
        }
        return acc;
    }

    std::string to_string() const
    {
        std::string out = unit.to_string();
        for (const auto &f : factors) {
            out += "*(" + f.poly.to_string() + ")";
            if (f.multiplicity > 1) {
                out += "^" + std::to_string(f.multiplicity);
            }
        }
        return out;
    }
    std::string to_latex() const
    {
        std::string out = unit.is_one() ? "" : (unit == Rational(-1) ? "-" : Poly::latex_rational(unit));
        for (const auto &f : factors) {
            const bool bare = f.poly.terms().size() == 1;
            out += bare ? f.poly.to_latex() : "(" + f.poly.to_latex() + ")";
            if (f.multiplicity > 1) {
                out += "^{" + std::to_string(f.multiplicity) + "}";
            }
        }
        return out.empty() ? "1" : out;
    }
};

namespace detail
{

inline Poly primitive_part(const Poly &p)
{
    mpz_class den = 1, num = 0;
    for (const auto &[m, c] : p.terms()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
    }
    for (const auto &[m, c] : p.terms()) {
        const mpz_class v = (c * Rational(den)).numerator();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
    Rational f = Rational(den) / Rational(num);
    if (p.leading_term().second.sign() < 0) {
        f = -f;
    }
    return p.scaled(f);
}

inline std::optional<Poly> try_divide(const Poly &p, const Poly &q)
{
    try {
        return p.exact_divide(q);
    } catch (const InexactDivision &) {
        return std::nullopt;
    }
}

// Divides out f as often as possible, recording the multiplicity.
inline bool extract(Poly &rest, const Poly &f, std::vector<PolyFactor> &out)
{
    unsigned e = 0;
    while (auto q = try_divide(rest, f)) {
        rest = std::move(*q);
        ++e;
    }
    if (e > 0) {
        out.push_back({f, e});
    }
    return e > 0;
}

// Searches for a factor x - (sum alpha_i y_i + beta) by specializing the
// other variables at a base point and at unit steps from it, and matching
// rational roots in x.
inline std::optional<Poly> find_linear_factor(const Poly &p, const std::vector<std::string> &vars, std::size_t xi)
{
    const std::string &x = vars[xi];
    std::vector<std::string> ys;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i != xi && p.has_variable(vars[i])) {
            ys.push_back(vars[i]);
        }
    }
    static const Rational base_values[] = {Rational(2, 7), Rational(3, 11), Rational(5, 13), Rational(7, 17),
                                           Rational(11, 19), Rational(13, 23)};
    if (ys.size() > std::size(base_values)) {
        return std::nullopt;
    }
    auto roots_at = [&](const std::vector<Rational> &point) {
        Poly q = p;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            q = q.substitute(ys[i], Poly(point[i]));
        }
        if (q.is_zero() || q.is_constant()) {
            return std::vector<Rational>{};
        }
        return rational_roots(UPoly::from_poly(q, x));
    };
    std::vector<Rational> base(base_values, base_values + ys.size());
    std::vector<std::vector<Rational>> roots{roots_at(base)};
    for (std::size_t i = 0; i < ys.size(); ++i) {
        auto pt = base;
        pt[i] += Rational(1);
        roots.push_back(roots_at(pt));
    }
    for (const auto &r : roots) {
        if (r.empty()) {
            return std::nullopt;
        }
    }
    std::vector<std::size_t> idx(roots.size(), 0);
    while (true) {
        // x = r0 + sum alpha_i (y_i - base_i), assembled in the variable order of p
        std::map<std::string, Rational> coef{{x, Rational(1)}};
        Rational constant = -roots[0][idx[0]];
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const Rational alpha = roots[i + 1][idx[i + 1]] - roots[0][idx[0]];
            coef[ys[i]] = -alpha;
            constant += alpha * base[i];
        }
        Poly cand;
        for (const auto &v : vars) {
            if (const auto it = coef.find(v); it != coef.end()) {
                cand += Poly::variable(v).scaled(it->second);
            }
        }
        cand += Poly(constant);
        cand = primitive_part(cand);
        if (try_divide(p, cand)) {
            return cand;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == roots[k].size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) {
            return std::nullopt;
        }
    }
}

} // namespace detail

// The same polynomial with its variables declared in `order` (names not
// occurring in p are skipped); affects printing and factor normalization.
inline Poly with_variable_order(const Poly &p, const std::vector<std::string> &order)
{
    Poly lead;
    for (const auto &v : order) {
        if (p.has_variable(v)) {
            lead += Poly::variable(v);
        }
    }
    return (lead + p) - lead;
}

// Factors p over Q as far as the small-degree extraction reaches: monomial
// factors, then linear factors in the variables; what remains is reported as
// one primitive cofactor. unit * product == p always holds.
inline Factorization factor_over_q(const Poly &p)
{
    if (p.is_zero()) {
        throw DomainError("cannot factor the zero polynomial");
    }
    Factorization out;
    const std::vector<std::string> vars = p.variables();
    Poly rest = p;
    for (const auto &v : vars) {
        detail::extract(rest, Poly::variable(v), out.factors);
    }
    bool found = true;
    while (found && !rest.is_constant()) {
        found = false;
        for (std::size_t xi = 0; xi < vars.size() && !found; ++xi) {
            if (rest.degree_in(vars[xi]) == 0) {
                continue;
            }
            if (auto f = detail::find_linear_factor(rest, vars, xi)) {
                found = detail::extract(rest, *f, out.factors);
            }
        }
    }
    if (!rest.is_constant()) {
        const Poly prim = detail::primitive_part(rest);
        detail::extract(rest, prim, out.factors);
    }
    Poly prod(1);
    for (const auto &f : out.factors) {
        prod *= f.poly.pow(f.multiplicity);
    }
    out.unit = p.exact_divide(prod).constant_value();
    return out;
}

} // namespace meanexp

#endif

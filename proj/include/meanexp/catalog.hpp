#ifndef MEANEXP_CATALOG_HPP
#define MEANEXP_CATALOG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <meanexp/bigfloat.hpp>
#include <meanexp/error.hpp>
#include <meanexp/expansion.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>
#include <meanexp/scalar.hpp>
#include <meanexp/series.hpp>

namespace meanexp
{

enum class Family {
    power,
    gini,
    stolarsky,
    genlog,
    seiffert1,
    seiffert2,
    neuman_sandor,
    logarithmic,
    identric,
    geometric,
    arithmetic,
    harmonic,
    heron
};

namespace detail
{

struct family_info {
    Family family;
    const char *name;
    std::size_t arity;
};

inline const std::vector<family_info> &family_table()
{
    static const std::vector<family_info> table{
        {Family::power, "power", 1},          {Family::gini, "gini", 2},
        {Family::stolarsky, "stolarsky", 2},  {Family::genlog, "genlog", 1},
        {Family::seiffert1, "seiffert1", 0},  {Family::seiffert2, "seiffert2", 0},
        {Family::neuman_sandor, "ns", 0},     {Family::logarithmic, "logarithmic", 0},
        {Family::identric, "identric", 0},    {Family::geometric, "geometric", 0},
        {Family::arithmetic, "arithmetic", 0}, {Family::harmonic, "harmonic", 0},
        {Family::heron, "heron", 0},
    };
    return table;
}

inline const family_info &info(Family f)
{
    for (const auto &e : family_table()) {
        if (e.family == f) {
            return e;
        }
    }
    throw DomainError("unknown mean family");
}

} // namespace detail

inline std::string family_name(Family f)
{
    return detail::info(f).name;
}

inline Family parse_family(std::string_view name)
{
    static const std::map<std::string, Family, std::less<>> aliases{
        {"neuman_sandor", Family::neuman_sandor}, {"P", Family::seiffert1}, {"T", Family::seiffert2},
        {"NS", Family::neuman_sandor},           {"L", Family::logarithmic}, {"I", Family::identric},
        {"G", Family::geometric},                {"A", Family::arithmetic},  {"H", Family::harmonic},
        {"He", Family::heron},
    };
    for (const auto &e : detail::family_table()) {
        if (name == e.name) {
            return e.family;
        }
    }
    if (const auto it = aliases.find(name); it != aliases.end()) {
        return it->second;
    }
    throw ParseError("unknown mean family '" + std::string(name) + "'");
}

// A mean from the catalog with exact rational parameters, written
// "family" or "family:p1,p2" (e.g. "power:2", "gini:1/2,3", "ns").
struct MeanSpec {
    Family family = Family::arithmetic;
    std::vector<Rational> params;

    MeanSpec() = default;
    MeanSpec(Family f, std::vector<Rational> p = {}) : family(f), params(std::move(p))
    {
        const auto arity = detail::info(f).arity;
        if (params.size() != arity) {
            throw ParseError("mean family '" + family_name(f) + "' takes " + std::to_string(arity)
                             + " parameter(s), got " + std::to_string(params.size()));
        }
    }

    static MeanSpec parse(std::string_view text)
    {
        const auto colon = text.find(':');
        const Family f = parse_family(text.substr(0, colon));
        std::vector<Rational> ps;
        if (colon != std::string_view::npos) {
            std::string_view rest = text.substr(colon + 1);
            while (true) {
                const auto comma = rest.find(',');
                ps.push_back(Rational::parse(rest.substr(0, comma)));
                if (comma == std::string_view::npos) {
                    break;
                }
                rest = rest.substr(comma + 1);
            }
        }
        return MeanSpec(f, std::move(ps));
    }

    std::string to_string() const
    {
        std::string out = family_name(family);
        for (std::size_t i = 0; i < params.size(); ++i) {
            out += (i == 0 ? ":" : ",") + params[i].to_string();
        }
        return out;
    }

    friend bool operator==(const MeanSpec &, const MeanSpec &) = default;
};

namespace detail
{

// Truncated power series in u with rational coefficients, index = power.
using useries = std::vector<Rational>;

inline useries useries_zero(std::size_t n)
{
    return useries(n + 1, Rational(0));
}

inline CoefSeq to_coefseq(const useries &a)
{
    std::vector<Scalar> c(a.begin(), a.end());
    return CoefSeq(std::move(c));
}

inline useries from_coefseq(const CoefSeq &a)
{
    useries out;
    for (const auto &c : a.coeffs) {
        out.push_back(c.rational());
    }
    return out;
}

inline useries u_power(const useries &a, const Rational &r)
{
    return from_coefseq(gould_power(to_coefseq(a), Exponent(r), a.size() - 1));
}

// (1 + u)^r
inline useries one_plus_u_pow(const Rational &r, std::size_t n)
{
    auto base = useries_zero(n);
    base[0] = 1;
    if (n >= 1) {
        base[1] = 1;
    }
    return u_power(base, r);
}

// f(u) -> f(-u)
inline useries reflect(useries a)
{
    for (std::size_t k = 1; k < a.size(); k += 2) {
        a[k] = -a[k];
    }
    return a;
}

inline useries add(const useries &a, const useries &b)
{
    useries out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}
inline useries sub(const useries &a, const useries &b)
{
    useries out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}
inline useries scale(useries a, const Rational &f)
{
    for (auto &c : a) {
        c *= f;
    }
    return a;
}
inline useries mul(const useries &a, const useries &b)
{
    useries out = useries_zero(a.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < a.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}
inline useries reciprocal(const useries &a)
{
    return u_power(a, Rational(-1));
}
inline useries div(const useries &a, const useries &b)
{
    return mul(a, reciprocal(b));
}

// f(u) / u for f with f(0) = 0; the result loses one order.
inline useries shift_down(const useries &a)
{
    if (!a[0].is_zero()) {
        throw DomainError("series has a nonzero constant term and cannot be divided by u");
    }
    return useries(a.begin() + 1, a.end());
}

// log(1 + u) and log(1 - u)
inline useries log1p_u(std::size_t n)
{
    auto out = useries_zero(n);
    for (std::size_t k = 1; k <= n; ++k) {
        out[k] = Rational((k % 2 == 1) ? 1 : -1, static_cast<long>(k));
    }
    return out;
}

// exp(f) for f(0) = 0: e_n = (1/n) sum_{k=1}^{n} k f_k e_{n-k}.
inline useries exp_series(const useries &f)
{
    if (!f[0].is_zero()) {
        throw DomainError("exp of a series with nonzero constant term is not rational");
    }
    auto e = useries_zero(f.size() - 1);
    e[0] = 1;
    for (std::size_t n = 1; n < f.size(); ++n) {
        Rational acc(0);
        for (std::size_t k = 1; k <= n; ++k) {
            acc += Rational(static_cast<long>(k)) * f[k] * e[n - k];
        }
        e[n] = acc / Rational(static_cast<long>(n));
    }
    return e;
}

// Odd series sum c_k u^{2k+1} for arcsin, arctan and arcsinh.
enum class inverse_trig { asin, atan, asinh };

inline useries inverse_trig_series(inverse_trig kind, std::size_t n)
{
    auto out = useries_zero(n);
    Rational central(1); // (2k)! / (4^k (k!)^2)
    for (std::size_t k = 0; 2 * k + 1 <= n; ++k) {
        if (k > 0) {
            central *= Rational(static_cast<long>(2 * k - 1), static_cast<long>(2 * k));
        }
        const Rational inv(1, static_cast<long>(2 * k + 1));
        const bool odd_k = (k % 2) == 1;
        switch (kind) {
            case inverse_trig::asin:
                out[2 * k + 1] = central * inv;
                break;
            case inverse_trig::atan:
                out[2 * k + 1] = odd_k ? -inv : inv;
                break;
            case inverse_trig::asinh:
                out[2 * k + 1] = odd_k ? -(central * inv) : central * inv;
                break;
        }
    }
    return out;
}

// (1+u)^r + (1-u)^r and (1+u)^r - (1-u)^r
inline useries even_part2(const Rational &r, std::size_t n)
{
    const auto a = one_plus_u_pow(r, n);
    return add(a, reflect(a));
}
inline useries odd_part2(const Rational &r, std::size_t n)
{
    const auto a = one_plus_u_pow(r, n);
    return sub(a, reflect(a));
}

// log(1+u) - log(1-u) = 2 artanh(u)
inline useries log_ratio(std::size_t n)
{
    const auto l = log1p_u(n);
    return sub(l, reflect(l));
}

inline useries sqrt_one_minus_u2(std::size_t n)
{
    auto base = useries_zero(n);
    base[0] = 1;
    if (n >= 2) {
        base[2] = -1;
    }
    return u_power(base, Rational(1, 2));
}

// F(u) with M(x - t, x + t) = x F(t / x), to order n in u.
inline useries mean_series(const MeanSpec &spec, std::size_t n)
{
    const std::size_t n1 = n + 1; // one extra order for series that get divided by u
    switch (spec.family) {
        case Family::arithmetic: {
            auto out = useries_zero(n);
            out[0] = 1;
            return out;
        }
        case Family::geometric:
            return sqrt_one_minus_u2(n);
        case Family::harmonic: {
            auto out = useries_zero(n);
            out[0] = 1;
            if (n >= 2) {
                out[2] = -1;
            }
            return out;
        }
        case Family::heron: {
            auto out = sqrt_one_minus_u2(n);
            out[0] += 2;
            return scale(out, Rational(1, 3));
        }
        case Family::power: {
            const Rational &r = spec.params[0];
            if (r.is_zero()) {
                return sqrt_one_minus_u2(n);
            }
            return u_power(scale(even_part2(r, n), Rational(1, 2)), Rational(1) / r);
        }
        case Family::gini: {
            const Rational &p = spec.params[0], &r = spec.params[1];
            if (p != r) {
                return u_power(div(even_part2(p, n), even_part2(r, n)), Rational(1) / (p - r));
            }
            if (p.is_zero()) {
                return sqrt_one_minus_u2(n);
            }
            const auto a = one_plus_u_pow(p, n);
            const auto l = log1p_u(n);
            const auto num = add(mul(a, l), reflect(mul(a, l)));
            return exp_series(div(num, add(a, reflect(a))));
        }
        case Family::stolarsky: {
            Rational p = spec.params[0], r = spec.params[1];
            if (p.is_zero() && !r.is_zero()) {
                std::swap(p, r);
            }
            if (p.is_zero() && r.is_zero()) {
                return sqrt_one_minus_u2(n);
            }
            if (p == r) {
                const auto a = one_plus_u_pow(r, n1);
                const auto l = log1p_u(n1);
                const auto num = shift_down(sub(mul(a, l), reflect(mul(a, l))));
                const auto den = shift_down(sub(a, reflect(a)));
                auto logf = div(num, den);
                logf[0] -= Rational(1) / r;
                return exp_series(logf);
            }
            if (r.is_zero()) {
                const auto num = shift_down(odd_part2(p, n1));
                const auto den = scale(shift_down(log_ratio(n1)), p);
                return u_power(div(num, den), Rational(1) / p);
            }
            const auto num = scale(shift_down(odd_part2(p, n1)), r);
            const auto den = scale(shift_down(odd_part2(r, n1)), p);
            return u_power(div(num, den), Rational(1) / (p - r));
        }
        case Family::genlog: {
            const Rational &r = spec.params[0];
            if (r == Rational(-1)) {
                return scale(reciprocal(shift_down(log_ratio(n1))), Rational(2));
            }
            if (r.is_zero()) {
                const auto a = one_plus_u_pow(Rational(1), n1);
                const auto l = log1p_u(n1);
                auto logf = scale(shift_down(sub(mul(a, l), reflect(mul(a, l)))), Rational(1, 2));
                logf[0] -= 1;
                return exp_series(logf);
            }
            const auto num = scale(shift_down(odd_part2(r + Rational(1), n1)), Rational(1) / (Rational(2) * (r + Rational(1))));
            return u_power(num, Rational(1) / r);
        }
        case Family::logarithmic:
            return mean_series(MeanSpec(Family::genlog, {Rational(-1)}), n);
        case Family::identric:
            return mean_series(MeanSpec(Family::genlog, {Rational(0)}), n);
        case Family::seiffert1:
            return reciprocal(shift_down(inverse_trig_series(inverse_trig::asin, n1)));
        case Family::seiffert2:
            return reciprocal(shift_down(inverse_trig_series(inverse_trig::atan, n1)));
        case Family::neuman_sandor:
            return reciprocal(shift_down(inverse_trig_series(inverse_trig::asinh, n1)));
    }
    throw UnsupportedLimitCase("no series derivation for " + spec.to_string());
}

} // namespace detail

// Exact coefficients a_0..a_{m_max} from the closed form, by series
// composition in u = t/x.
inline MeanCoeffs exact_coeffs(const MeanSpec &spec, std::size_t m_max)
{
    const auto f = detail::mean_series(spec, 2 * m_max + 1);
    std::vector<Scalar> out;
    for (std::size_t n = 0; n <= m_max; ++n) {
        if (!f[2 * n + 1].is_zero()) {
            throw DomainError("series of " + spec.to_string() + " is not even in u");
        }
        out.emplace_back(f[2 * n]);
    }
    return MeanCoeffs(CoefSeq(std::move(out)), spec.to_string());
}

namespace detail
{

inline std::vector<std::string> family_parameter_names(Family f)
{
    switch (f) {
        case Family::power:
        case Family::genlog:
            return {"r"};
        case Family::gini:
        case Family::stolarsky:
            return {"p", "r"};
        default:
            throw DomainError("family " + family_name(f) + " has no symbolic parameters");
    }
}

// Newton interpolation through (xs[i], ys[i]) as a polynomial in `var`.
inline Poly newton_interpolate(const std::vector<Rational> &xs, std::vector<Poly> ys, const std::string &var)
{
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = n - 1; i >= j; --i) {
            ys[i] = (ys[i] - ys[i - 1]).divided_by(xs[i] - xs[i - j]);
        }
    }
    const Poly x = Poly::variable(var);
    Poly acc = ys[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        acc = acc * (x - Poly(xs[i])) + ys[i];
    }
    return acc;
}

inline std::vector<Rational> sample_points(std::size_t count, const Rational &offset)
{
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(Rational(static_cast<long>(i) + 1) + offset);
    }
    return out;
}

inline std::vector<Poly> interpolate_family(Family f, std::size_t m_max, std::size_t degree)
{
    const auto names = family_parameter_names(f);
    const auto ps = sample_points(degree + 1, Rational(1, 3));
    std::vector<std::vector<Poly>> along_first; // [coefficient][sample]
    along_first.assign(m_max + 1, {});
    if (names.size() == 1) {
        for (const auto &p : ps) {
            const auto c = exact_coeffs(MeanSpec(f, {p}), m_max);
            for (std::size_t n = 0; n <= m_max; ++n) {
                along_first[n].push_back(Poly(c[n].rational()));
            }
        }
    } else {
        const auto rs = sample_points(degree + 1, Rational(1, 5));
        for (const auto &p : ps) {
            std::vector<std::vector<Poly>> vals(m_max + 1);
            for (const auto &r : rs) {
                const auto c = exact_coeffs(MeanSpec(f, {p, r}), m_max);
                for (std::size_t n = 0; n <= m_max; ++n) {
                    vals[n].push_back(Poly(c[n].rational()));
                }
            }
            for (std::size_t n = 0; n <= m_max; ++n) {
                along_first[n].push_back(newton_interpolate(rs, vals[n], names[1]));
            }
        }
    }
    std::vector<Poly> out;
    for (std::size_t n = 0; n <= m_max; ++n) {
        out.push_back(newton_interpolate(ps, along_first[n], names[0]));
    }
    return out;
}

} // namespace detail

// Coefficients as polynomials in the family parameters (p, r or r), found
// by exact interpolation over rational sample points and certified on
// held-out points. The degree bound starts at 2 m_max + 1 and is raised on
// a held-out mismatch.
inline MeanCoeffs exact_coeffs_symbolic(Family f, std::size_t m_max)
{
    const auto names = detail::family_parameter_names(f);
    const std::vector<std::vector<Rational>> held_out = names.size() == 1
        ? std::vector<std::vector<Rational>>{{Rational(-7, 5)}, {Rational(29, 13)}}
        : std::vector<std::vector<Rational>>{{Rational(-7, 5), Rational(29, 13)}, {Rational(11, 7), Rational(-3, 4)}};
    const std::size_t cap = 4 * m_max + 6;
    for (std::size_t degree = 2 * m_max + 1; degree <= cap; degree += 2) {
        const auto polys = detail::interpolate_family(f, m_max, degree);
        bool ok = true;
        for (const auto &pt : held_out) {
            const auto c = exact_coeffs(MeanSpec(f, pt), m_max);
            std::map<std::string, Rational> assign;
            for (std::size_t i = 0; i < names.size(); ++i) {
                assign.emplace(names[i], pt[i]);
            }
            for (std::size_t n = 0; n <= m_max && ok; ++n) {
                ok = polys[n].eval(assign) == c[n].rational();
            }
        }
        if (ok) {
            std::vector<Scalar> coeffs(polys.begin(), polys.end());
            return MeanCoeffs(CoefSeq(std::move(coeffs)), family_name(f) + " (symbolic)");
        }
    }
    throw DegreeBoundExceeded("coefficients of " + family_name(f) + " are not polynomial of degree <= "
                              + std::to_string(cap) + " in the parameters");
}

// Closed-form evaluation of M(s, t). Near the diagonal, where closed forms
// cancel catastrophically, the exact series in u = (t-s)/(t+s) is used.
inline BigFloat mean_eval(const MeanSpec &spec, const BigFloat &s_in, const BigFloat &t_in, BigFloat::prec_t precision)
{
    if (s_in.sign() <= 0 || t_in.sign() <= 0) {
        throw DomainError("means are defined for positive arguments only, got (" + s_in.to_string(10) + ", "
                          + t_in.to_string(10) + ")");
    }
    if (s_in == t_in) {
        return s_in.with_precision(precision);
    }
    const BigFloat::prec_t w = precision + precision / 4 + 32;
    const bool swap = t_in < s_in;
    const BigFloat s = (swap ? t_in : s_in).with_precision(w);
    const BigFloat t = (swap ? s_in : t_in).with_precision(w);
    const BigFloat two(2L, w), one(1L, w);
    const BigFloat x = (s + t) / two;
    const BigFloat u = (t - s) / (t + s);

    BigFloat threshold(1L, w);
    mpfr_mul_2si(threshold.raw(), threshold.raw(), -static_cast<long>(precision / 4), MPFR_RNDN);
    if (u < threshold) {
        const auto a = exact_coeffs(spec, 4);
        const BigFloat u2 = u * u;
        BigFloat acc(w), term(1L, w);
        for (std::size_t n = 0; n <= 4; ++n) {
            acc += BigFloat(a[n].rational(), w) * term;
            term *= u2;
        }
        return (x * acc).with_precision(precision);
    }

    auto bf = [w](const Rational &q) { return BigFloat(q, w); };
    auto geometric = [&] { return sqrt(s * t); };
    BigFloat out(w);
    switch (spec.family) {
        case Family::arithmetic:
            out = x;
            break;
        case Family::geometric:
            out = geometric();
            break;
        case Family::harmonic:
            out = two * s * t / (s + t);
            break;
        case Family::heron:
            out = (s + geometric() + t) / BigFloat(3L, w);
            break;
        case Family::power: {
            const Rational &r = spec.params[0];
            if (r.is_zero()) {
                out = geometric();
            } else {
                const BigFloat rr = bf(r);
                out = pow((pow(s, rr) + pow(t, rr)) / two, one / rr);
            }
            break;
        }
        case Family::gini: {
            const Rational &p = spec.params[0], &r = spec.params[1];
            if (p != r) {
                const BigFloat pp = bf(p), rr = bf(r);
                out = pow((pow(s, pp) + pow(t, pp)) / (pow(s, rr) + pow(t, rr)), one / bf(p - r));
            } else if (p.is_zero()) {
                out = geometric();
            } else {
                const BigFloat pp = bf(p);
                const BigFloat sp = pow(s, pp), tp = pow(t, pp);
                out = exp((sp * log(s) + tp * log(t)) / (sp + tp));
            }
            break;
        }
        case Family::stolarsky: {
            Rational p = spec.params[0], r = spec.params[1];
            if (p.is_zero() && !r.is_zero()) {
                std::swap(p, r);
            }
            if (p.is_zero() && r.is_zero()) {
                out = geometric();
            } else if (p == r) {
                const BigFloat rr = bf(r);
                const BigFloat sr = pow(s, rr), tr = pow(t, rr);
                out = exp(-(one / rr) + (tr * log(t) - sr * log(s)) / (tr - sr));
            } else if (r.is_zero()) {
                const BigFloat pp = bf(p);
                out = pow((pow(t, pp) - pow(s, pp)) / (pp * (log(t) - log(s))), one / pp);
            } else {
                const BigFloat pp = bf(p), rr = bf(r);
                out = pow((rr * (pow(t, pp) - pow(s, pp))) / (pp * (pow(t, rr) - pow(s, rr))), one / bf(p - r));
            }
            break;
        }
        case Family::genlog:
        case Family::logarithmic:
        case Family::identric: {
            const Rational r = spec.family == Family::genlog ? spec.params[0]
                                                              : (spec.family == Family::logarithmic ? Rational(-1)
                                                                                                    : Rational(0));
            if (r == Rational(-1)) {
                out = (t - s) / (log(t) - log(s));
            } else if (r.is_zero()) {
                out = exp((t * log(t) - s * log(s)) / (t - s) - one);
            } else {
                const BigFloat r1 = bf(r + Rational(1));
                out = pow((pow(t, r1) - pow(s, r1)) / (r1 * (t - s)), one / bf(r));
            }
            break;
        }
        case Family::seiffert1:
            out = (t - s) / (two * asin(u));
            break;
        case Family::seiffert2:
            out = (t - s) / (two * atan(u));
            break;
        case Family::neuman_sandor:
            out = (t - s) / (two * asinh(u));
            break;
    }
    return out.with_precision(precision);
}

inline BigFloat mean_eval(const MeanSpec &spec, const Rational &s, const Rational &t, BigFloat::prec_t precision)
{
    return mean_eval(spec, BigFloat(s, precision + 64), BigFloat(t, precision + 64), precision);
}

namespace detail
{

// Least-squares solve of an overdetermined system by Householder QR.
// Returns the solution and the max-norm of the residual.
inline std::pair<std::vector<BigFloat>, BigFloat> least_squares(std::vector<std::vector<BigFloat>> a,
                                                                std::vector<BigFloat> b, BigFloat::prec_t prec)
{
    const std::size_t rows = a.size(), cols = a.front().size();
    const auto a0 = a;
    const auto b0 = b;
    for (std::size_t j = 0; j < cols; ++j) {
        BigFloat norm(prec);
        for (std::size_t i = j; i < rows; ++i) {
            norm += a[i][j] * a[i][j];
        }
        norm = sqrt(norm);
        if (norm.is_zero()) {
            throw IllConditioned("rank-deficient oracle system");
        }
        const BigFloat alpha = a[j][j].sign() > 0 ? -norm : norm;
        std::vector<BigFloat> v(rows, BigFloat(prec));
        for (std::size_t i = j; i < rows; ++i) {
            v[i] = a[i][j];
        }
        v[j] -= alpha;
        BigFloat vnorm2(prec);
        for (std::size_t i = j; i < rows; ++i) {
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2.is_zero()) {
            continue;
        }
        const BigFloat two(2L, prec);
        for (std::size_t k = j; k < cols; ++k) {
            BigFloat dot(prec);
            for (std::size_t i = j; i < rows; ++i) {
                dot += v[i] * a[i][k];
            }
            const BigFloat f = two * dot / vnorm2;
            for (std::size_t i = j; i < rows; ++i) {
                a[i][k] -= f * v[i];
            }
        }
        BigFloat dot(prec);
        for (std::size_t i = j; i < rows; ++i) {
            dot += v[i] * b[i];
        }
        const BigFloat f = two * dot / vnorm2;
        for (std::size_t i = j; i < rows; ++i) {
            b[i] -= f * v[i];
        }
    }
    std::vector<BigFloat> x(cols, BigFloat(prec));
    for (std::size_t j = cols; j-- > 0;) {
        BigFloat acc = b[j];
        for (std::size_t k = j + 1; k < cols; ++k) {
            acc -= a[j][k] * x[k];
        }
        x[j] = acc / a[j][j];
    }
    BigFloat worst(prec);
    for (std::size_t i = 0; i < rows; ++i) {
        BigFloat r = -b0[i];
        for (std::size_t k = 0; k < cols; ++k) {
            r += a0[i][k] * x[k];
        }
        if (abs(r) > worst) {
            worst = abs(r);
        }
    }
    return {std::move(x), std::move(worst)};
}

} // namespace detail

// Numeric approximations of a_0..a_{m_max}, independent of the exact
// series: fit M(x_j - 1, x_j + 1) / x_j = sum_n a_n x_j^{-2n} by least
// squares. Nodes are placed so that x_j^{-2} = rho^2 z_j with z_j the
// Chebyshev points of [0, 1]; a_n beyond m_max are fitted too and dropped,
// which keeps the truncation error far below the reported orders.
inline std::vector<BigFloat> oracle_coeffs(const MeanSpec &spec, std::size_t m_max, BigFloat::prec_t precision)
{
    const std::size_t unknowns = 2 * m_max + 13;
    const std::size_t rows = unknowns + 2;
    const BigFloat::prec_t prec = std::max<BigFloat::prec_t>(
        {precision, static_cast<BigFloat::prec_t>(64 + 12 * m_max), static_cast<BigFloat::prec_t>(8 * unknowns + 64)});
    const Rational rho2(1, 8);
    const BigFloat pi = const_pi(prec);
    const BigFloat one(1L, prec), two(2L, prec);
    std::vector<std::vector<BigFloat>> a(rows, std::vector<BigFloat>(unknowns, BigFloat(prec)));
    std::vector<BigFloat> b(rows, BigFloat(prec));
    for (std::size_t i = 0; i < rows; ++i) {
        const BigFloat angle = pi * BigFloat(static_cast<long>(2 * i + 1), prec) / BigFloat(static_cast<long>(2 * rows), prec);
        const BigFloat z = (one + cos(angle)) / two;
        const BigFloat x = one / sqrt(BigFloat(rho2, prec) * z);
        BigFloat zp = one;
        for (std::size_t n = 0; n < unknowns; ++n) {
            a[i][n] = zp;
            zp *= z;
        }
        b[i] = mean_eval(spec, x - one, x + one, prec) / x;
    }
    auto [c, residual] = detail::least_squares(std::move(a), std::move(b), prec);
    BigFloat limit(1L, prec);
    mpfr_mul_2si(limit.raw(), limit.raw(), -60, MPFR_RNDN);
    if (residual > limit) {
        throw IllConditioned("oracle fit for " + spec.to_string() + " has residual " + residual.to_string(6)
                             + "; raise precision");
    }
    std::vector<BigFloat> out;
    BigFloat scale = one;
    const BigFloat inv_rho2 = BigFloat(Rational(1) / rho2, prec);
    for (std::size_t n = 0; n <= m_max; ++n) {
        out.push_back((c[n] * scale).with_precision(precision));
        scale *= inv_rho2;
    }
    return out;
}

} // namespace meanexp

#endif

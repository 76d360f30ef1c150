#ifndef MEANEXP_SERIES_HPP
#define MEANEXP_SERIES_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <meanexp/error.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>
#include <meanexp/scalar.hpp>

namespace meanexp
{

// Finite prefix a_0..a_N of a coefficient sequence. For generic series the
// entry a_n multiplies x^{-n}; for mean sequences it multiplies
// t^{2n} x^{-2n+1}.
struct CoefSeq {
    std::vector<Scalar> coeffs;

    CoefSeq() = default;
    explicit CoefSeq(std::vector<Scalar> c) : coeffs(std::move(c)) {}
    CoefSeq(std::initializer_list<Scalar> c) : coeffs(c) {}

    // Highest index held; -1 for an empty sequence.
    long order() const noexcept
    {
        return static_cast<long>(coeffs.size()) - 1;
    }
    const Scalar &operator[](std::size_t i) const
    {
        if (i >= coeffs.size()) {
            throw InsufficientOrder("coefficient index " + std::to_string(i) + " requested from a sequence of order "
                                    + std::to_string(order()));
        }
        return coeffs[i];
    }
    bool is_numeric() const
    {
        for (const auto &c : coeffs) {
            if (!c.is_rational()) {
                return false;
            }
        }
        return true;
    }
    CoefSeq truncated(std::size_t n_max) const
    {
        if (static_cast<long>(n_max) > order()) {
            throw InsufficientOrder("cannot truncate a sequence of order " + std::to_string(order()) + " to order "
                                    + std::to_string(n_max));
        }
        return CoefSeq(std::vector<Scalar>(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n_max) + 1));
    }
    std::vector<std::string> to_strings() const
    {
        std::vector<std::string> out;
        for (const auto &c : coeffs) {
            out.push_back(c.to_string());
        }
        return out;
    }

    friend bool operator==(const CoefSeq &, const CoefSeq &) = default;
};

// Exponent of the power recursion: an integer, a rational, or a polynomial
// of degree at most one in a single parameter.
class Exponent
{
public:
    Exponent(int r) : m_value(Rational(r)) {}
    Exponent(long r) : m_value(Rational(r)) {}
    Exponent(const Rational &r) : m_value(r) {}
    explicit Exponent(const Scalar &r) : m_value(r)
    {
        if (!r.is_rational()) {
            const Poly p = r.poly();
            if (p.variables().size() > 1 || p.degree() > 1) {
                throw UnsupportedExponent("symbolic exponent " + r.to_string()
                                          + " must be linear in a single parameter");
            }
        }
    }

    const Scalar &value() const noexcept
    {
        return m_value;
    }
    bool is_integer() const
    {
        return m_value.is_rational() && m_value.rational().is_integer();
    }
    long as_long() const
    {
        return m_value.rational().numerator().get_si();
    }
    std::string to_string() const
    {
        return m_value.to_string();
    }

private:
    Scalar m_value;
};

// Coefficients P[0..n_max, r, a] of the r-th power of the series with
// coefficients a, via the recursion
//   P[n] = 1/(n a_0) sum_{k=1}^{n} (k(1+r) - n) a_k P[n-k].
inline CoefSeq gould_power(const CoefSeq &a, const Exponent &r, std::size_t n_max)
{
    if (a.coeffs.empty()) {
        throw InsufficientOrder("power of an empty sequence");
    }
    if (!a.coeffs[0].is_rational()) {
        throw SymbolicCoefficient("leading coefficient " + a.coeffs[0].to_string() + " must be a rational");
    }
    const Rational a0 = a.coeffs[0].rational();
    if (a0.is_zero()) {
        throw ZeroLeadingCoefficient("power of a series with zero leading coefficient");
    }
    if (!a0.is_one() && !r.is_integer()) {
        throw UnsupportedExponent("non-integer exponent " + r.to_string() + " requires leading coefficient 1, got "
                                  + a0.to_string());
    }
    if (a.order() < static_cast<long>(n_max)) {
        throw InsufficientOrder("power to order " + std::to_string(n_max) + " of a sequence of order "
                                + std::to_string(a.order()));
    }
    std::vector<Scalar> p;
    p.reserve(n_max + 1);
    p.emplace_back(a0.is_one() ? Rational(1) : a0.pow(r.as_long()));
    const Scalar one_plus_r = Scalar(1) + r.value();
    for (std::size_t n = 1; n <= n_max; ++n) {
        Scalar acc;
        for (std::size_t k = 1; k <= n; ++k) {
            if (a.coeffs[k].is_zero() || p[n - k].is_zero()) {
                continue;
            }
            const Scalar bracket = one_plus_r * Scalar(Rational(static_cast<long>(k))) - Scalar(Rational(static_cast<long>(n)));
            acc += bracket * a.coeffs[k] * p[n - k];
        }
        p.push_back(acc / (Rational(static_cast<long>(n)) * a0));
    }
    return CoefSeq(std::move(p));
}

// c_n = sum_{k=0}^{n} a_k b_{n-k}, n = 0..n_max.
inline CoefSeq convolve(const CoefSeq &a, const CoefSeq &b, std::size_t n_max)
{
    if (a.order() < static_cast<long>(n_max) || b.order() < static_cast<long>(n_max)) {
        throw InsufficientOrder("convolution to order " + std::to_string(n_max) + " of sequences of orders "
                                + std::to_string(a.order()) + " and " + std::to_string(b.order()));
    }
    std::vector<Scalar> c(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            if (!a.coeffs[k].is_zero() && !b.coeffs[n - k].is_zero()) {
                c[n] += a.coeffs[k] * b.coeffs[n - k];
            }
        }
    }
    return CoefSeq(std::move(c));
}

namespace detail
{

inline void require_normalized(const CoefSeq &a)
{
    if (a.coeffs.empty() || !a.coeffs[0].is_one()) {
        throw NotNormalized("mean coefficient sequence must start with a_0 = 1");
    }
}

// Entry j of g = (1, a1, 0, a2, 0, a3, ...), with sign applied to the a's.
inline Scalar g_entry(const CoefSeq &a, std::size_t j, bool tilde)
{
    if (j == 0) {
        return Scalar(1);
    }
    if (j % 2 == 0) {
        return Scalar(0);
    }
    const Scalar &v = a[(j + 1) / 2];
    return tilde ? -v : v;
}

// Entry j of h = (2, -1, a1, 0, a2, 0, ...); the tilde variant flips h_1.
inline Scalar h_entry(const CoefSeq &a, std::size_t j, bool tilde)
{
    if (j == 0) {
        return Scalar(2);
    }
    if (j == 1) {
        return Scalar(tilde ? 1 : -1);
    }
    if (j % 2 == 1) {
        return Scalar(0);
    }
    return a[j / 2];
}

inline std::pair<CoefSeq, CoefSeq> build_pair(const CoefSeq &a, std::size_t n_max, bool tilde)
{
    require_normalized(a);
    std::vector<Scalar> g, h;
    for (std::size_t j = 0; j <= n_max; ++j) {
        g.push_back(g_entry(a, j, tilde));
        h.push_back(h_entry(a, j, tilde));
    }
    return {CoefSeq(std::move(g)), CoefSeq(std::move(h))};
}

} // namespace detail

// Auxiliary sequences g = (1, a1, 0, a2, 0, ...) and h = (2, -1, a1, 0, a2, ...)
// truncated at index n_max.
inline std::pair<CoefSeq, CoefSeq> build_g_h(const CoefSeq &a, std::size_t n_max)
{
    return detail::build_pair(a, n_max, false);
}
inline std::pair<CoefSeq, CoefSeq> build_g_h(const CoefSeq &a)
{
    return build_g_h(a, static_cast<std::size_t>(2 * std::max(a.order(), 0L)));
}

// g~ = (1, -a1, 0, -a2, ...) and h~ = (2, 1, a1, 0, a2, ...).
inline std::pair<CoefSeq, CoefSeq> build_g_h_tilde(const CoefSeq &a, std::size_t n_max)
{
    return detail::build_pair(a, n_max, true);
}
inline std::pair<CoefSeq, CoefSeq> build_g_h_tilde(const CoefSeq &a)
{
    return build_g_h_tilde(a, static_cast<std::size_t>(2 * std::max(a.order(), 0L)));
}

// Lazily computed table of powers P[., r, a] of one sequence, keyed by the
// integer exponent. Instances are meant to live for one top-level call.
class PowerTable
{
public:
    PowerTable(const CoefSeq &a, std::size_t n_max) : m_a(&a), m_n_max(n_max) {}

    const CoefSeq &power(long r)
    {
        auto it = m_cache.find(r);
        if (it == m_cache.end()) {
            it = m_cache.emplace(r, gould_power(*m_a, Exponent(r), m_n_max)).first;
        }
        return it->second;
    }
    const Scalar &operator()(std::size_t n, long r)
    {
        return power(r)[n];
    }

private:
    const CoefSeq *m_a;
    std::size_t m_n_max;
    std::map<long, CoefSeq> m_cache;
};

struct DSTerms {
    Scalar d;
    Scalar s;
};

// Reduced D(m,n,k) and S(m,n,k): D vanishes for even m, S for odd m, and the
// surviving one equals -+2 P[k,2n,g] P[m-2n-k,-2n+1,h].
inline DSTerms D_S_terms(long m, long n, long k, const CoefSeq &g, const CoefSeq &h)
{
    if (m < 0 || n < 0 || n > m / 2 || k < 0 || k > m - 2 * n) {
        throw IndexOutOfRange("D/S terms require 0 <= n <= floor(m/2) and 0 <= k <= m-2n, got (m,n,k) = ("
                              + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + ")");
    }
    const auto pg = gould_power(g, Exponent(2 * n), static_cast<std::size_t>(k));
    const auto ph = gould_power(h, Exponent(-2 * n + 1), static_cast<std::size_t>(m - 2 * n - k));
    const Scalar prod = Scalar(2) * pg.coeffs.back() * ph.coeffs.back();
    if (m % 2 == 0) {
        return {Scalar(0), prod};
    }
    return {-prod, Scalar(0)};
}

// The same terms straight from their definitions, using g~ and h~:
//   D = P[k,2n,g~] P[m-2n-k,-2n+1,h~] - P[k,2n,g] P[m-2n-k,-2n+1,h]
//   S = P[k,2n,g~] P[m-2n-k,-2n+1,h~] + P[k,2n,g] P[m-2n-k,-2n+1,h]
inline DSTerms D_S_terms_unreduced(long m, long n, long k, const CoefSeq &g, const CoefSeq &h, const CoefSeq &gt,
                                   const CoefSeq &ht)
{
    if (m < 0 || n < 0 || n > m / 2 || k < 0 || k > m - 2 * n) {
        throw IndexOutOfRange("D/S terms index out of range");
    }
    const auto kk = static_cast<std::size_t>(k), jj = static_cast<std::size_t>(m - 2 * n - k);
    const Scalar plain = gould_power(g, Exponent(2 * n), kk).coeffs.back()
                         * gould_power(h, Exponent(-2 * n + 1), jj).coeffs.back();
    const Scalar tilde = gould_power(gt, Exponent(2 * n), kk).coeffs.back()
                         * gould_power(ht, Exponent(-2 * n + 1), jj).coeffs.back();
    return {tilde - plain, tilde + plain};
}

} // namespace meanexp

#endif

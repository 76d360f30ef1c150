#ifndef MEANEXP_EXPANSION_HPP
#define MEANEXP_EXPANSION_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <meanexp/bigfloat.hpp>
#include <meanexp/error.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>
#include <meanexp/scalar.hpp>
#include <meanexp/series.hpp>

namespace meanexp
{

// Coefficients a_n of M(x-t, x+t) ~ sum a_n t^{2n} x^{-2n+1}; a_0 = 1.
struct MeanCoeffs {
    CoefSeq seq;
    std::string label;

    MeanCoeffs() = default;
    MeanCoeffs(CoefSeq s, std::string l = {}) : seq(std::move(s)), label(std::move(l))
    {
        detail::require_normalized(seq);
    }

    long order() const noexcept
    {
        return seq.order();
    }
    const Scalar &operator[](std::size_t i) const
    {
        return seq[i];
    }
};

// Half-difference and half-sum expansions T ~ sum d_m t^{2m+1} x^{-2m} and
// X ~ sum s_m t^{2m} x^{-2m+1} of the inner means N(x-t, M) and N(M, x+t).
struct DSSeqs {
    CoefSeq d;
    CoefSeq s;
};

// Generic symbolic mean sequence (1, a1<tag>, a2<tag>, ...).
inline MeanCoeffs symbolic_mean(const std::string &tag, std::size_t m_max)
{
    std::vector<Scalar> c{Scalar(1)};
    for (std::size_t n = 1; n <= m_max; ++n) {
        c.push_back(Scalar::variable("a" + std::to_string(n) + tag));
    }
    return MeanCoeffs(CoefSeq(std::move(c)), "symbolic " + (tag.empty() ? std::string("mean") : tag));
}

namespace detail
{

inline void require_order(const MeanCoeffs &a, std::size_t m_max, const char *what)
{
    if (a.order() < static_cast<long>(m_max)) {
        throw InsufficientOrder(std::string(what) + " has order " + std::to_string(a.order()) + ", need "
                                + std::to_string(m_max));
    }
}

inline DSSeqs d_s_impl(const CoefSeq &aN, const CoefSeq &aM, std::size_t m_max)
{
    // g up to index 2m_max uses a^M_1..a^M_{m_max}; h_{2m_max+1} is
    // structurally zero.
    std::vector<Scalar> gv, hv;
    for (std::size_t j = 0; j <= 2 * m_max; ++j) {
        gv.push_back(g_entry(aM, j, false));
    }
    for (std::size_t j = 0; j <= 2 * m_max + 1; ++j) {
        hv.push_back(h_entry(aM, j, false));
    }
    const CoefSeq g(std::move(gv)), h(std::move(hv));
    PowerTable pg(g, 2 * m_max), ph(h, 2 * m_max + 1);

    // sum_{k=0}^{len} P[k,2n,g] P[len-k,1-2n,h]
    auto inner = [&](long n, std::size_t len) {
        if (n == 0) {
            return ph(len, 1);
        }
        Scalar acc;
        const auto &gp = pg.power(2 * n);
        const auto &hp = ph.power(1 - 2 * n);
        for (std::size_t k = 0; k <= len; ++k) {
            if (!gp.coeffs[k].is_zero() && !hp.coeffs[len - k].is_zero()) {
                acc += gp.coeffs[k] * hp.coeffs[len - k];
            }
        }
        return acc;
    };

    std::vector<Scalar> d, s;
    const Rational half(1, 2);
    for (std::size_t m = 0; m <= m_max; ++m) {
        Scalar dm, sm;
        for (std::size_t n = 0; n <= m; ++n) {
            if (aN[n].is_zero()) {
                continue;
            }
            dm += aN[n] * inner(static_cast<long>(n), 2 * m + 1 - 2 * n);
            sm += aN[n] * inner(static_cast<long>(n), 2 * m - 2 * n);
        }
        d.push_back(-(dm * Scalar(half)));
        s.push_back(sm * Scalar(half));
    }
    return {CoefSeq(std::move(d)), CoefSeq(std::move(s))};
}

// a^R_m for m = m_lo..m_max, given d and s to order m_max.
inline std::vector<Scalar> resultant_from_ds(const CoefSeq &aK, const DSSeqs &ds, std::size_t m_lo, std::size_t m_max)
{
    PowerTable pd(ds.d, m_max), ps(ds.s, m_max);
    std::vector<Scalar> out;
    for (std::size_t m = m_lo; m <= m_max; ++m) {
        Scalar acc;
        for (std::size_t n = 0; n <= m; ++n) {
            if (aK[n].is_zero()) {
                continue;
            }
            const auto &dp = pd.power(2 * static_cast<long>(n));
            const auto &sp = ps.power(1 - 2 * static_cast<long>(n));
            Scalar inner;
            for (std::size_t k = 0; k <= m - n; ++k) {
                if (!dp.coeffs[k].is_zero() && !sp.coeffs[m - n - k].is_zero()) {
                    inner += dp.coeffs[k] * sp.coeffs[m - n - k];
                }
            }
            acc += aK[n] * inner;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

} // namespace detail

// d_m and s_m for m = 0..m_max.
inline DSSeqs d_s_seqs(const MeanCoeffs &aN, const MeanCoeffs &aM, std::size_t m_max)
{
    detail::require_order(aN, m_max, "a^N");
    detail::require_order(aM, m_max, "a^M");
    return detail::d_s_impl(aN.seq, aM.seq, m_max);
}

// Coefficients of the resultant mean-map R = K(N(s, M), N(M, t)).
inline MeanCoeffs resultant_coeffs(const MeanCoeffs &aK, const MeanCoeffs &aN, const MeanCoeffs &aM, std::size_t m_max)
{
    detail::require_order(aK, m_max, "a^K");
    const auto ds = d_s_seqs(aN, aM, m_max);
    return MeanCoeffs(CoefSeq(detail::resultant_from_ds(aK.seq, ds, 0, m_max)),
                      "R(" + aK.label + ", " + aN.label + ", " + aM.label + ")");
}

// Which of the three means in R(K, N, M) is solved for.
enum class Unknown { stable, stabilizable, stabilized };

namespace detail
{

// At step m the unknown a_m enters a^R_m linearly with coefficient
// 2^{-2m} per K or N slot and 1/2 for the M slot; all other dependence is on
// lower indices. Solving a_m = a^R_m gives a_m = rest / (1 - c_m).
inline Rational unknown_weight(Unknown which, std::size_t m)
{
    const Rational quarter_pow = Rational(1, 4).pow(static_cast<long>(m));
    switch (which) {
        case Unknown::stable:
            return Rational(1, 2) + Rational(2) * quarter_pow;
        case Unknown::stabilizable:
            return quarter_pow;
        case Unknown::stabilized:
            return Rational(1, 2);
    }
    return Rational(0);
}

// One triangular driver for the three fixed-point problems. `first` is the
// index of the first coefficient to solve for; coefficients below it are
// taken from `seed`.
inline CoefSeq solve_fixed_point(Unknown which, const CoefSeq &seed, std::size_t first, const CoefSeq *known_a,
                                 const CoefSeq *known_b, std::size_t m_max)
{
    std::vector<Scalar> u(seed.coeffs.begin(), seed.coeffs.begin() + static_cast<std::ptrdiff_t>(first));
    for (std::size_t m = first; m <= m_max; ++m) {
        u.emplace_back(0);
        const CoefSeq cur(u);
        CoefSeq trunc_a, trunc_b;
        const CoefSeq *k_seq = nullptr, *n_seq = nullptr, *m_seq = nullptr;
        switch (which) {
            case Unknown::stable:
                k_seq = n_seq = m_seq = &cur;
                break;
            case Unknown::stabilizable:
                k_seq = known_a;
                n_seq = &cur;
                m_seq = known_b;
                break;
            case Unknown::stabilized:
                k_seq = known_a;
                n_seq = known_b;
                m_seq = &cur;
                break;
        }
        const auto ds = d_s_impl(*n_seq, *m_seq, m);
        const Scalar rest = resultant_from_ds(*k_seq, ds, m, m).front();
        u.back() = rest / (Rational(1) - unknown_weight(which, m));
    }
    return CoefSeq(std::move(u));
}

} // namespace detail

// Stable mean with free first coefficient a1. A symbolic a1 yields
// polynomial coefficients in a1.
inline MeanCoeffs stable_coeffs(const Scalar &a1, std::size_t m_max)
{
    if (m_max < 1) {
        throw InsufficientOrder("stable coefficients need m_max >= 1");
    }
    const CoefSeq seed{Scalar(1), a1};
    return MeanCoeffs(detail::solve_fixed_point(Unknown::stable, seed, 2, nullptr, nullptr, m_max),
                      "stable(a1=" + a1.to_string() + ")");
}

// (K, M)-stabilizable mean N: N = K(N(s, M), N(M, t)).
inline MeanCoeffs stabilizable_coeffs(const MeanCoeffs &aK, const MeanCoeffs &aM, std::size_t m_max)
{
    detail::require_order(aK, m_max, "a^K");
    detail::require_order(aM, m_max, "a^M");
    const CoefSeq seed{Scalar(1)};
    return MeanCoeffs(detail::solve_fixed_point(Unknown::stabilizable, seed, 1, &aK.seq, &aM.seq, m_max),
                      "stabilizable(" + aK.label + ", " + aM.label + ")");
}

// (K, N)-stabilized mean M: M = K(N(s, M), N(M, t)).
inline MeanCoeffs stabilized_coeffs(const MeanCoeffs &aK, const MeanCoeffs &aN, std::size_t m_max)
{
    detail::require_order(aK, m_max, "a^K");
    detail::require_order(aN, m_max, "a^N");
    const CoefSeq seed{Scalar(1)};
    return MeanCoeffs(detail::solve_fixed_point(Unknown::stabilized, seed, 1, &aK.seq, &aN.seq, m_max),
                      "stabilized(" + aK.label + ", " + aN.label + ")");
}

// Coefficients a_m(s,t) of M(x+s, x+t) ~ sum a_m(s,t) x^{-m+1}:
//   a_m(s,t) = 2^{-m} sum_n a_n binom(1-2n, m-2n) (t-s)^{2n} (t+s)^{m-2n}.
inline std::vector<Poly> shifted_coeffs(const MeanCoeffs &a, std::size_t m_max)
{
    detail::require_order(a, m_max / 2, "mean sequence");
    const Poly s = Poly::variable("s"), t = Poly::variable("t");
    const Poly diff = t - s, sum = t + s;
    std::vector<Poly> out;
    for (std::size_t m = 0; m <= m_max; ++m) {
        Poly acc;
        for (std::size_t n = 0; 2 * n <= m; ++n) {
            const Rational b = binomial(Rational(1 - 2 * static_cast<long>(n)), static_cast<long>(m - 2 * n));
            if (b.is_zero() || a[n].is_zero()) {
                continue;
            }
            acc += a[n].poly().scaled(b) * diff.pow(static_cast<unsigned>(2 * n))
                   * sum.pow(static_cast<unsigned>(m - 2 * n));
        }
        out.push_back(acc.scaled(Rational(1, 2).pow(static_cast<long>(m))));
    }
    return out;
}

// Partial sum sum_{n=0}^{order} a_n t^{2n} x^{-2n+1}.
inline BigFloat expansion_eval(const MeanCoeffs &a, const BigFloat &x, const BigFloat &t, std::size_t order)
{
    detail::require_order(a, order, "mean sequence");
    const auto prec = std::max(x.precision(), t.precision());
    if (t.is_zero()) {
        return x.with_precision(prec);
    }
    for (std::size_t n = 0; n <= order; ++n) {
        if (!a[n].is_rational()) {
            throw SymbolicCoefficient("coefficient a_" + std::to_string(n) + " = " + a[n].to_string()
                                      + " is symbolic");
        }
    }
    const BigFloat ratio = (t * t) / (x * x);
    BigFloat term = x.with_precision(prec);
    BigFloat acc(prec);
    for (std::size_t n = 0; n <= order; ++n) {
        acc += BigFloat(a[n].rational(), prec) * term;
        term *= ratio;
    }
    return acc;
}

// Shifted expansion sum_{m=0}^{order} a_m(s,t) x^{-m+1} evaluated numerically.
inline BigFloat shifted_eval(const MeanCoeffs &a, const Rational &s, const Rational &t, const BigFloat &x,
                             std::size_t order)
{
    const auto polys = shifted_coeffs(a, order);
    BigFloat acc(x.precision());
    BigFloat xpow = x; // x^{1-m}
    for (std::size_t m = 0; m <= order; ++m) {
        const Rational c = polys[m].eval({{"s", s}, {"t", t}});
        acc += BigFloat(c, x.precision()) * xpow;
        xpow = xpow / x;
    }
    return acc;
}

} // namespace meanexp

#endif

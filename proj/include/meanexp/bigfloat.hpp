#ifndef MEANEXP_BIGFLOAT_HPP
#define MEANEXP_BIGFLOAT_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>

#include <mpfr.h>

#include <meanexp/error.hpp>
#include <meanexp/rational.hpp>

namespace meanexp
{

// Arbitrary-precision binary float backed by MPFR. The precision (in bits)
// travels with each value; binary operations produce a result at the larger
// of the two operand precisions. There is no global default precision.
class BigFloat
{
public:
    using prec_t = mpfr_prec_t;

    explicit BigFloat(prec_t prec = 128)
    {
        mpfr_init2(m_x, prec);
        mpfr_set_zero(m_x, 1);
    }
    BigFloat(long v, prec_t prec)
    {
        mpfr_init2(m_x, prec);
        mpfr_set_si(m_x, v, MPFR_RNDN);
    }
    BigFloat(const Rational &v, prec_t prec)
    {
        mpfr_init2(m_x, prec);
        mpfr_set_q(m_x, v.get().get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const std::string &decimal, prec_t prec)
    {
        mpfr_init2(m_x, prec);
        if (mpfr_set_str(m_x, decimal.c_str(), 10, MPFR_RNDN) != 0) {
            mpfr_clear(m_x);
            throw ParseError("invalid decimal literal '" + decimal + "'");
        }
    }
    BigFloat(const BigFloat &o)
    {
        mpfr_init2(m_x, mpfr_get_prec(o.m_x));
        mpfr_set(m_x, o.m_x, MPFR_RNDN);
    }
    BigFloat(BigFloat &&o) noexcept
    {
        mpfr_init2(m_x, MPFR_PREC_MIN);
        mpfr_swap(m_x, o.m_x);
    }
    BigFloat &operator=(const BigFloat &o)
    {
        if (this != &o) {
            mpfr_set_prec(m_x, mpfr_get_prec(o.m_x));
            mpfr_set(m_x, o.m_x, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat &operator=(BigFloat &&o) noexcept
    {
        mpfr_swap(m_x, o.m_x);
        return *this;
    }
    ~BigFloat()
    {
        mpfr_clear(m_x);
    }

    prec_t precision() const noexcept
    {
        return mpfr_get_prec(m_x);
    }
    // Copy rounded to another precision.
    BigFloat with_precision(prec_t prec) const
    {
        BigFloat r(prec);
        mpfr_set(r.m_x, m_x, MPFR_RNDN);
        return r;
    }

    mpfr_srcptr raw() const noexcept
    {
        return m_x;
    }
    mpfr_ptr raw() noexcept
    {
        return m_x;
    }

    int sign() const noexcept
    {
        return mpfr_sgn(m_x);
    }
    bool is_zero() const noexcept
    {
        return mpfr_zero_p(m_x) != 0;
    }
    bool is_finite() const noexcept
    {
        return mpfr_number_p(m_x) != 0;
    }
    double to_double() const noexcept
    {
        return mpfr_get_d(m_x, MPFR_RNDN);
    }
    // Base-2 exponent e with 0.5 <= |x| / 2^e < 1.
    long exponent2() const noexcept
    {
        return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(m_x));
    }

    std::string to_string(std::size_t digits = 30) const
    {
        if (!is_finite()) {
            return mpfr_nan_p(m_x) != 0 ? "nan" : (sign() < 0 ? "-inf" : "inf");
        }
        char *buf = nullptr;
        const std::string fmt = "%." + std::to_string(digits) + "Rg";
        mpfr_asprintf(&buf, fmt.c_str(), m_x);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

#define MEANEXP_BIGFLOAT_BINOP(op, fn)                                                                                 \
    friend BigFloat operator op(const BigFloat &a, const BigFloat &b)                                                  \
    {                                                                                                                  \
        BigFloat r(std::max(a.precision(), b.precision()));                                                            \
        fn(r.m_x, a.m_x, b.m_x, MPFR_RNDN);                                                                            \
        return r;                                                                                                      \
    }                                                                                                                  \
    BigFloat &operator op##=(const BigFloat & o)                                                                       \
    {                                                                                                                  \
        return *this = *this op o;                                                                                     \
    }

    MEANEXP_BIGFLOAT_BINOP(+, mpfr_add)
    MEANEXP_BIGFLOAT_BINOP(-, mpfr_sub)
    MEANEXP_BIGFLOAT_BINOP(*, mpfr_mul)
    MEANEXP_BIGFLOAT_BINOP(/, mpfr_div)

#undef MEANEXP_BIGFLOAT_BINOP

    friend BigFloat operator-(const BigFloat &a)
    {
        BigFloat r(a.precision());
        mpfr_neg(r.m_x, a.m_x, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const BigFloat &a, const BigFloat &b)
    {
        return mpfr_equal_p(a.m_x, b.m_x) != 0;
    }
    friend std::partial_ordering operator<=>(const BigFloat &a, const BigFloat &b)
    {
        if (mpfr_unordered_p(a.m_x, b.m_x) != 0) {
            return std::partial_ordering::unordered;
        }
        const int c = mpfr_cmp(a.m_x, b.m_x);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

    friend std::ostream &operator<<(std::ostream &os, const BigFloat &x)
    {
        return os << x.to_string();
    }

private:
    mpfr_t m_x;
};

namespace detail
{

template <typename Fn>
BigFloat unary(const BigFloat &x, Fn fn)
{
    BigFloat r(x.precision());
    fn(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

} // namespace detail

inline BigFloat sqrt(const BigFloat &x)
{
    return detail::unary(x, mpfr_sqrt);
}
inline BigFloat log(const BigFloat &x)
{
    return detail::unary(x, mpfr_log);
}
inline BigFloat exp(const BigFloat &x)
{
    return detail::unary(x, mpfr_exp);
}
inline BigFloat asin(const BigFloat &x)
{
    return detail::unary(x, mpfr_asin);
}
inline BigFloat atan(const BigFloat &x)
{
    return detail::unary(x, mpfr_atan);
}
inline BigFloat asinh(const BigFloat &x)
{
    return detail::unary(x, mpfr_asinh);
}
inline BigFloat cos(const BigFloat &x)
{
    return detail::unary(x, mpfr_cos);
}
inline BigFloat abs(const BigFloat &x)
{
    return detail::unary(x, mpfr_abs);
}
inline BigFloat pow(const BigFloat &x, const BigFloat &y)
{
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline BigFloat pow(const BigFloat &x, long n)
{
    BigFloat r(x.precision());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

inline BigFloat const_pi(BigFloat::prec_t prec)
{
    BigFloat r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

// |a - b| / |b|, or |a| when b is zero.
inline BigFloat relative_error(const BigFloat &a, const BigFloat &b)
{
    if (b.is_zero()) {
        return abs(a);
    }
    return abs(a - b) / abs(b);
}

} // namespace meanexp

#endif

#ifndef MEANEXP_SURD_HPP
#define MEANEXP_SURD_HPP

#include <ostream>
#include <string>

#include <gmpxx.h>

#include <meanexp/bigfloat.hpp>
#include <meanexp/error.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>

namespace meanexp
{

// a + b sqrt(d) with d a square-free integer >= 2, or a plain rational
// (b = 0, d = 1).
class QuadraticSurd
{
public:
    QuadraticSurd() = default;
    QuadraticSurd(const Rational &a) : m_a(a) {}
    QuadraticSurd(int a) : m_a(Rational(a)) {}
    QuadraticSurd(const Rational &a, const Rational &b, const mpz_class &radicand) : m_a(a), m_b(b), m_d(radicand)
    {
        if (radicand <= 0) {
            throw DomainError("radicand must be positive, got " + radicand.get_str());
        }
        mpz_class square(1), rest(1), n = radicand;
        for (mpz_class p = 2; p * p <= n; ++p) {
            while (n % (p * p) == 0) {
                n /= p * p;
                square *= p;
            }
            if (n % p == 0) {
                n /= p;
                rest *= p;
            }
        }
        m_d = rest * n;
        m_b = m_b * Rational(square);
        normalize();
    }

    const Rational &rational_part() const noexcept
    {
        return m_a;
    }
    const Rational &surd_part() const noexcept
    {
        return m_b;
    }
    const mpz_class &radicand() const noexcept
    {
        return m_d;
    }
    bool is_rational() const noexcept
    {
        return m_b.is_zero();
    }
    bool is_zero() const noexcept
    {
        return m_a.is_zero() && m_b.is_zero();
    }

    QuadraticSurd conjugate() const
    {
        QuadraticSurd r = *this;
        r.m_b = -r.m_b;
        return r;
    }

    // Exact sign.
    int sign() const
    {
        const int sa = m_a.sign(), sb = m_b.sign();
        if (sb == 0 || sa == sb) {
            return sa != 0 ? sa : sb;
        }
        if (sa == 0) {
            return sb;
        }
        const Rational lhs = m_a * m_a, rhs = m_b * m_b * Rational(m_d);
        return lhs > rhs ? sa : (lhs < rhs ? sb : 0);
    }

    friend QuadraticSurd operator+(const QuadraticSurd &x, const QuadraticSurd &y)
    {
        const mpz_class d = common(x, y);
        return make(x.m_a + y.m_a, x.m_b + y.m_b, d);
    }
    friend QuadraticSurd operator-(const QuadraticSurd &x, const QuadraticSurd &y)
    {
        const mpz_class d = common(x, y);
        return make(x.m_a - y.m_a, x.m_b - y.m_b, d);
    }
    friend QuadraticSurd operator*(const QuadraticSurd &x, const QuadraticSurd &y)
    {
        const mpz_class d = common(x, y);
        return make(x.m_a * y.m_a + x.m_b * y.m_b * Rational(d), x.m_a * y.m_b + x.m_b * y.m_a, d);
    }
    friend QuadraticSurd operator/(const QuadraticSurd &x, const QuadraticSurd &y)
    {
        if (y.is_zero()) {
            throw DivisionByZero("division of a surd by zero");
        }
        const mpz_class d = common(x, y);
        const Rational norm = y.m_a * y.m_a - y.m_b * y.m_b * Rational(d);
        const QuadraticSurd num = x * y.conjugate();
        return make(num.m_a / norm, num.m_b / norm, d);
    }
    QuadraticSurd operator-() const
    {
        return make(-m_a, -m_b, m_d);
    }
    QuadraticSurd &operator+=(const QuadraticSurd &o)
    {
        return *this = *this + o;
    }
    QuadraticSurd &operator*=(const QuadraticSurd &o)
    {
        return *this = *this * o;
    }

    friend bool operator==(const QuadraticSurd &x, const QuadraticSurd &y)
    {
        return x.m_a == y.m_a && x.m_b == y.m_b && (x.m_b.is_zero() || x.m_d == y.m_d);
    }

    BigFloat to_bigfloat(BigFloat::prec_t prec) const
    {
        const BigFloat a(m_a, prec);
        if (is_rational()) {
            return a;
        }
        return a + BigFloat(m_b, prec) * sqrt(BigFloat(Rational(m_d), prec));
    }

    // "1 + sqrt(2)/2", "-sqrt(7)", "3/4".
    std::string to_string() const
    {
        if (is_rational()) {
            return m_a.to_string();
        }
        std::string out;
        if (!m_a.is_zero()) {
            out = m_a.to_string() + (m_b.sign() > 0 ? " + " : " - ");
        } else if (m_b.sign() < 0) {
            out = "-";
        }
        const Rational b = m_b.abs();
        const std::string root = "sqrt(" + m_d.get_str() + ")";
        out += b.numerator() == 1 ? root : b.numerator().get_str() + "*" + root;
        if (b.denominator() != 1) {
            out += "/" + b.denominator().get_str();
        }
        return out;
    }

    std::string to_latex() const
    {
        if (is_rational()) {
            return Poly::latex_rational(m_a);
        }
        std::string out;
        if (!m_a.is_zero()) {
            out = Poly::latex_rational(m_a) + (m_b.sign() > 0 ? " + " : " - ");
        } else if (m_b.sign() < 0) {
            out = "-";
        }
        const Rational b = m_b.abs();
        std::string root = "\\sqrt{" + m_d.get_str() + "}";
        if (b.numerator() != 1) {
            root = b.numerator().get_str() + root;
        }
        out += b.denominator() == 1 ? root : "\\tfrac{" + root + "}{" + b.denominator().get_str() + "}";
        return out;
    }

    friend std::ostream &operator<<(std::ostream &os, const QuadraticSurd &x)
    {
        return os << x.to_string();
    }

private:
    Rational m_a{0};
    Rational m_b{0};
    mpz_class m_d{1};

    static QuadraticSurd make(const Rational &a, const Rational &b, const mpz_class &d)
    {
        QuadraticSurd r;
        r.m_a = a;
        r.m_b = b;
        r.m_d = d;
        r.normalize();
        return r;
    }
    static mpz_class common(const QuadraticSurd &x, const QuadraticSurd &y)
    {
        if (x.is_rational()) {
            return y.m_d;
        }
        if (y.is_rational() || x.m_d == y.m_d) {
            return x.m_d;
        }
        throw DomainError("surds over different fields: sqrt(" + x.m_d.get_str() + ") and sqrt(" + y.m_d.get_str()
                          + ")");
    }
    void normalize()
    {
        if (m_d == 1) {
            m_a += m_b;
            m_b = Rational(0);
        }
        if (m_b.is_zero()) {
            m_d = 1;
        }
    }
};

// Horner evaluation of a polynomial in one variable at a surd; this is
// arithmetic in Q[x]/(minimal polynomial).
inline QuadraticSurd eval_at(const Poly &p, const std::string &var, const QuadraticSurd &x)
{
    const auto coeffs = p.coefficients_in(var);
    QuadraticSurd acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + QuadraticSurd(it->constant_value());
    }
    return acc;
}

} // namespace meanexp

#endif

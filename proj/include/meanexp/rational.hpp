#ifndef MEANEXP_RATIONAL_HPP
#define MEANEXP_RATIONAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <meanexp/error.hpp>

namespace meanexp
{

// Exact rational number, always kept in canonical form (gcd(num, den) = 1,
// den > 0). Backed by GMP's mpq_class.
class Rational
{
public:
    Rational() = default;
    Rational(int v) : m_q(v) {}
    Rational(long v) : m_q(v) {}
    Rational(long long v) : m_q(mpz_class(std::to_string(v))) {}
    explicit Rational(const mpz_class &v) : m_q(v) {}
    explicit Rational(const mpq_class &v) : m_q(v)
    {
        m_q.canonicalize();
    }
    Rational(long num, long den)
    {
        if (den == 0) {
            throw DivisionByZero("rational with zero denominator");
        }
        m_q = mpq_class(mpz_class(num), mpz_class(den));
        m_q.canonicalize();
    }
    Rational(const mpz_class &num, const mpz_class &den)
    {
        if (den == 0) {
            throw DivisionByZero("rational with zero denominator");
        }
        m_q = mpq_class(num, den);
        m_q.canonicalize();
    }

    // Accepts "n" or "n/d" with an optional sign on n. Decimals are rejected.
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        auto trim = [](std::string &x) {
            const auto b = x.find_first_not_of(" \t");
            const auto e = x.find_last_not_of(" \t");
            x = (b == std::string::npos) ? std::string{} : x.substr(b, e - b + 1);
        };
        trim(s);
        auto valid_int = [](const std::string &x, bool allow_sign) {
            if (x.empty()) {
                return false;
            }
            std::size_t i = 0;
            if (allow_sign && (x[0] == '-' || x[0] == '+')) {
                i = 1;
            }
            if (i == x.size()) {
                return false;
            }
            for (; i < x.size(); ++i) {
                if (x[i] < '0' || x[i] > '9') {
                    return false;
                }
            }
            return true;
        };
        const auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        trim(num);
        trim(den);
        if (!valid_int(num, true) || !valid_int(den, false)) {
            throw ParseError("invalid rational literal '" + std::string(text) + "'");
        }
        if (num[0] == '+') {
            num.erase(0, 1);
        }
        const mpz_class d(den);
        if (d == 0) {
            throw DivisionByZero("rational literal '" + std::string(text) + "' has zero denominator");
        }
        return Rational(mpz_class(num), d);
    }

    const mpq_class &get() const noexcept
    {
        return m_q;
    }
    mpz_class numerator() const
    {
        return m_q.get_num();
    }
    mpz_class denominator() const
    {
        return m_q.get_den();
    }

    int sign() const noexcept
    {
        return sgn(m_q);
    }
    bool is_zero() const noexcept
    {
        return sgn(m_q) == 0;
    }
    bool is_one() const noexcept
    {
        return m_q == 1;
    }
    bool is_integer() const noexcept
    {
        return m_q.get_den() == 1;
    }

    // Integer power; negative exponents require a nonzero base.
    Rational pow(long e) const
    {
        if (e < 0) {
            if (is_zero()) {
                throw DivisionByZero("negative power of zero");
            }
            return Rational(1) / pow(-e);
        }
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), m_q.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(d.get_mpz_t(), m_q.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(n, d);
    }

    Rational abs() const
    {
        Rational r;
        r.m_q = ::abs(m_q);
        return r;
    }

    double to_double() const
    {
        return m_q.get_d();
    }

    // "n" when the denominator is 1, "n/d" otherwise.
    std::string to_string() const
    {
        return m_q.get_str();
    }

    Rational &operator+=(const Rational &o)
    {
        m_q += o.m_q;
        return *this;
    }
    Rational &operator-=(const Rational &o)
    {
        m_q -= o.m_q;
        return *this;
    }
    Rational &operator*=(const Rational &o)
    {
        m_q *= o.m_q;
        return *this;
    }
    Rational &operator/=(const Rational &o)
    {
        if (o.is_zero()) {
            throw DivisionByZero("division of " + to_string() + " by zero");
        }
        m_q /= o.m_q;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational &b)
    {
        return a += b;
    }
    friend Rational operator-(Rational a, const Rational &b)
    {
        return a -= b;
    }
    friend Rational operator*(Rational a, const Rational &b)
    {
        return a *= b;
    }
    friend Rational operator/(Rational a, const Rational &b)
    {
        return a /= b;
    }
    friend Rational operator-(const Rational &a)
    {
        Rational r;
        r.m_q = -a.m_q;
        return r;
    }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        return a.m_q == b.m_q;
    }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        const int c = cmp(a.m_q, b.m_q);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream &operator<<(std::ostream &os, const Rational &r)
    {
        return os << r.to_string();
    }

private:
    mpq_class m_q;
};

// Generalized binomial coefficient binom(r, k) for rational r and k >= 0.
inline Rational binomial(const Rational &r, long k)
{
    if (k < 0) {
        return Rational(0);
    }
    Rational acc(1);
    for (long i = 0; i < k; ++i) {
        acc *= (r - Rational(i)) / Rational(i + 1);
    }
    return acc;
}

} // namespace meanexp

template <>
struct std::hash<meanexp::Rational> {
    std::size_t operator()(const meanexp::Rational &r) const
    {
        return std::hash<std::string>{}(r.to_string());
    }
};

#endif

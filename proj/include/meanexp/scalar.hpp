#ifndef MEANEXP_SCALAR_HPP
#define MEANEXP_SCALAR_HPP

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include <meanexp/error.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>

namespace meanexp
{

// Coefficient scalar shared by all recursions: either an exact rational or a
// polynomial in symbolic parameters. A polynomial without variables is
// always stored as a Rational, so equality is structural.
class Scalar
{
public:
    Scalar() : m_v(Rational(0)) {}
    Scalar(int v) : m_v(Rational(v)) {}
    Scalar(const Rational &r) : m_v(r) {}
    Scalar(const Poly &p)
    {
        if (p.is_constant()) {
            m_v = p.constant_value();
        } else {
            m_v = p;
        }
    }

    static Scalar variable(const std::string &name)
    {
        return Scalar(Poly::variable(name));
    }

    // Rational literal or polynomial expression.
    static Scalar parse(std::string_view text)
    {
        return Scalar(Poly::parse(text));
    }

    bool is_rational() const noexcept
    {
        return std::holds_alternative<Rational>(m_v);
    }
    bool is_zero() const noexcept
    {
        return is_rational() && std::get<Rational>(m_v).is_zero();
    }
    bool is_one() const noexcept
    {
        return is_rational() && std::get<Rational>(m_v).is_one();
    }

    const Rational &rational() const
    {
        if (!is_rational()) {
            throw SymbolicCoefficient("coefficient " + to_string() + " is symbolic");
        }
        return std::get<Rational>(m_v);
    }

    Poly poly() const
    {
        if (is_rational()) {
            return Poly(std::get<Rational>(m_v));
        }
        return std::get<Poly>(m_v);
    }

    Rational eval(const std::map<std::string, Rational> &assignment) const
    {
        return is_rational() ? std::get<Rational>(m_v) : std::get<Poly>(m_v).eval(assignment);
    }

    Scalar substitute(const std::string &name, const Scalar &value) const
    {
        if (is_rational()) {
            return *this;
        }
        return Scalar(std::get<Poly>(m_v).substitute(name, value.poly()));
    }

    friend Scalar operator+(const Scalar &a, const Scalar &b)
    {
        if (a.is_rational() && b.is_rational()) {
            return Scalar(std::get<Rational>(a.m_v) + std::get<Rational>(b.m_v));
        }
        return Scalar(a.poly() + b.poly());
    }
    friend Scalar operator-(const Scalar &a, const Scalar &b)
    {
        if (a.is_rational() && b.is_rational()) {
            return Scalar(std::get<Rational>(a.m_v) - std::get<Rational>(b.m_v));
        }
        return Scalar(a.poly() - b.poly());
    }
    friend Scalar operator*(const Scalar &a, const Scalar &b)
    {
        if (a.is_rational() && b.is_rational()) {
            return Scalar(std::get<Rational>(a.m_v) * std::get<Rational>(b.m_v));
        }
        if (a.is_zero() || b.is_zero()) {
            return Scalar{};
        }
        return Scalar(a.poly() * b.poly());
    }
    Scalar operator-() const
    {
        if (is_rational()) {
            return Scalar(-std::get<Rational>(m_v));
        }
        return Scalar(-std::get<Poly>(m_v));
    }

    // Division is only offered by a nonzero rational.
    friend Scalar operator/(const Scalar &a, const Rational &d)
    {
        if (d.is_zero()) {
            throw DivisionByZero("division of " + a.to_string() + " by zero");
        }
        if (a.is_rational()) {
            return Scalar(std::get<Rational>(a.m_v) / d);
        }
        return Scalar(std::get<Poly>(a.m_v).divided_by(d));
    }

    Scalar &operator+=(const Scalar &o)
    {
        return *this = *this + o;
    }
    Scalar &operator-=(const Scalar &o)
    {
        return *this = *this - o;
    }
    Scalar &operator*=(const Scalar &o)
    {
        return *this = *this * o;
    }

    friend bool operator==(const Scalar &a, const Scalar &b)
    {
        if (a.is_rational() != b.is_rational()) {
            return false;
        }
        if (a.is_rational()) {
            return std::get<Rational>(a.m_v) == std::get<Rational>(b.m_v);
        }
        return std::get<Poly>(a.m_v) == std::get<Poly>(b.m_v);
    }

    std::string to_string() const
    {
        return is_rational() ? std::get<Rational>(m_v).to_string() : std::get<Poly>(m_v).to_string();
    }
    std::string to_latex() const
    {
        return poly().to_latex();
    }

    friend std::ostream &operator<<(std::ostream &os, const Scalar &s)
    {
        return os << s.to_string();
    }

private:
    std::variant<Rational, Poly> m_v;
};

inline Scalar scalar_add(const Scalar &a, const Scalar &b)
{
    return a + b;
}
inline Scalar scalar_mul(const Scalar &a, const Scalar &b)
{
    return a * b;
}
inline Scalar scalar_neg(const Scalar &a)
{
    return -a;
}
inline Scalar scalar_div_rat(const Scalar &a, const Rational &d)
{
    return a / d;
}
inline Rational poly_eval(const Poly &p, const std::map<std::string, Rational> &assignment)
{
    return p.eval(assignment);
}
inline Poly poly_exact_divide(const Poly &p, const Poly &q)
{
    return p.exact_divide(q);
}

} // namespace meanexp

#endif

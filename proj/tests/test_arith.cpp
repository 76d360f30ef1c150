#include <gtest/gtest.h>

#include <meanexp/meanexp.hpp>

using namespace meanexp;

namespace
{

Rational Q(long n, long d = 1)
{
    return Rational(n, d);
}

} // namespace

TEST(Rational, ParsesAndNormalizes)
{
    EXPECT_EQ(Rational::parse("-6/4"), Q(-3, 2));
    EXPECT_EQ(Rational::parse(" 17 "), Q(17));
    EXPECT_EQ(Rational::parse("-0/5"), Q(0));
    EXPECT_EQ(Q(-3, 2).to_string(), "-3/2");
    EXPECT_THROW(Rational::parse("1/0"), DivisionByZero);
    EXPECT_THROW(Rational::parse("abc"), ParseError);
    EXPECT_THROW(Rational::parse(""), ParseError);
}

TEST(Rational, FieldArithmetic)
{
    EXPECT_EQ(Q(1, 6) + Q(1, 3), Q(1, 2));
    EXPECT_EQ(Q(1, 6) - Q(1, 3), Q(-1, 6));
    EXPECT_EQ(Q(2, 3) * Q(9, 4), Q(3, 2));
    EXPECT_EQ(Q(2, 3) / Q(4, 9), Q(3, 2));
    EXPECT_EQ(Q(-2, 3).pow(3), Q(-8, 27));
    EXPECT_EQ(Q(2, 3).pow(-2), Q(9, 4));
    EXPECT_THROW(Q(1) / Q(0), DivisionByZero);
    EXPECT_LT(Q(-1, 2), Q(-1, 3));
    EXPECT_EQ(Q(-5, 7).abs(), Q(5, 7));
}

TEST(Rational, BigValuesStayExact)
{
    Rational acc(1);
    for (long k = 1; k <= 60; ++k) {
        acc *= Q(k, k + 1);
    }
    EXPECT_EQ(acc, Q(1, 61));
    const Rational big = Rational::parse("123456789012345678901234567890/3");
    EXPECT_EQ(big * Q(3), Rational::parse("123456789012345678901234567890"));
}

TEST(Poly, ArithmeticAndCanonicalForm)
{
    const Poly x = Poly::variable("x"), y = Poly::variable("y");
    const Poly p = (x + y) * (x - y);
    EXPECT_EQ(p, x * x - y * y);
    EXPECT_EQ(p, Poly::parse("x^2 - y^2"));
    EXPECT_EQ((x + y).pow(3), Poly::parse("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(p.degree(), 2u);
    EXPECT_EQ(p.degree_in("y"), 2u);
}

TEST(Poly, EvalSubstituteDivide)
{
    const Poly p = Poly::parse("1/2*a^2*b - 3*b + 1");
    EXPECT_EQ(p.eval({{"a", Q(2)}, {"b", Q(1, 3)}}), Q(2, 3) - Q(1) + Q(1));
    EXPECT_THROW(p.eval({{"a", Q(1)}}), MissingVariable);
    EXPECT_EQ(p.substitute("b", Poly::parse("2*a")), Poly::parse("a^3 - 6*a + 1"));

    const Poly f = Poly::parse("(a + 2*b)*(a - b + 3)");
    EXPECT_EQ(f.exact_divide(Poly::parse("a + 2*b")), Poly::parse("a - b + 3"));
    EXPECT_THROW(f.exact_divide(Poly::parse("a + b")), InexactDivision);
}

TEST(Poly, CoefficientsInVariable)
{
    const Poly p = Poly::parse("3*u^2*v + u*v^2 - 7");
    const auto cs = p.coefficients_in("u");
    ASSERT_EQ(cs.size(), 3u);
    EXPECT_EQ(cs[0], Poly::parse("-7"));
    EXPECT_EQ(cs[1], Poly::parse("v^2"));
    EXPECT_EQ(cs[2], Poly::parse("3*v"));
}

TEST(Poly, Printing)
{
    EXPECT_EQ(Poly::parse("-x^2 + 1/2*x").to_string(), "-x^2 + 1/2*x");
    EXPECT_EQ(Poly::parse("-1/2*a1").to_latex(), "-\\tfrac{1}{2} a_{1}");
    EXPECT_THROW(Poly::parse("x^"), ParseError);
    EXPECT_THROW(Poly::parse("(x + 1"), ParseError);
}

TEST(Scalar, CollapsesConstants)
{
    const Scalar a = Scalar::variable("t");
    const Scalar z = a - a;
    EXPECT_TRUE(z.is_rational());
    EXPECT_TRUE(z.is_zero());
    const Scalar s = (a + Scalar(1)) * (a - Scalar(1)) - a * a;
    ASSERT_TRUE(s.is_rational());
    EXPECT_EQ(s.rational(), Q(-1));
    EXPECT_FALSE(a.is_rational());
    EXPECT_EQ(a.eval({{"t", Q(5)}}), Q(5));
}

TEST(Series, GouldPowerIntegerAndFractional)
{
    const CoefSeq lin{Scalar(1), Scalar(1), Scalar(0), Scalar(0), Scalar(0)};
    EXPECT_EQ(gould_power(lin, 2, 4), (CoefSeq{Scalar(1), Scalar(2), Scalar(1), Scalar(0), Scalar(0)}));
    // sqrt(1+z) = 1 + z/2 - z^2/8 + z^3/16 - 5 z^4/128
    EXPECT_EQ(gould_power(lin, Q(1, 2), 4),
              (CoefSeq{Scalar(1), Scalar(Q(1, 2)), Scalar(Q(-1, 8)), Scalar(Q(1, 16)), Scalar(Q(-5, 128))}));
    // 1/(1-z) = sum z^n
    const CoefSeq one_minus{Scalar(1), Scalar(-1), Scalar(0), Scalar(0), Scalar(0)};
    EXPECT_EQ(gould_power(one_minus, -1, 4), (CoefSeq{Scalar(1), Scalar(1), Scalar(1), Scalar(1), Scalar(1)}));
}

TEST(Series, GouldPowerSymbolicAndErrors)
{
    const Scalar c = Scalar::variable("c");
    const CoefSeq s{Scalar(1), c, Scalar(0)};
    const auto sq = gould_power(s, 2, 2);
    EXPECT_EQ(sq[1].poly(), Poly::parse("2*c"));
    EXPECT_EQ(sq[2].poly(), Poly::parse("c^2"));

    const CoefSeq two{Scalar(2), Scalar(1), Scalar(0)};
    EXPECT_EQ(gould_power(two, 2, 2)[0].rational(), Q(4));
    EXPECT_THROW(gould_power(two, Q(1, 2), 2), UnsupportedExponent);
    EXPECT_THROW(gould_power(CoefSeq{Scalar(0), Scalar(1)}, 2, 1), ZeroLeadingCoefficient);
    EXPECT_THROW(gould_power(CoefSeq{Scalar(1), Scalar(1)}, 2, 3), InsufficientOrder);
}

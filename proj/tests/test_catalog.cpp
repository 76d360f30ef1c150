#include <gtest/gtest.h>

#include <meanexp/meanexp.hpp>

using namespace meanexp;

namespace
{

constexpr BigFloat::prec_t prec = 160;

BigFloat eval(const char *spec, const Rational &s, const Rational &t)
{
    return mean_eval(MeanSpec::parse(spec), s, t, prec);
}

BigFloat tol(const char *v)
{
    return BigFloat(std::string(v), prec);
}

const std::vector<const char *> all_specs{"power:2",      "power:-1/2",    "gini:1,2",      "gini:2,2",
                                          "gini:0,0",     "stolarsky:1,3", "stolarsky:2,2", "stolarsky:0,3",
                                          "genlog:-1",    "genlog:0",      "genlog:3",      "seiffert1",
                                          "seiffert2",    "ns",            "logarithmic",   "identric",
                                          "geometric",    "arithmetic",    "harmonic",      "heron"};

} // namespace

TEST(MeanSpec, ParseAndPrint)
{
    EXPECT_EQ(MeanSpec::parse("stolarsky:1,3").to_string(), "stolarsky:1,3");
    EXPECT_EQ(MeanSpec::parse("power:-1/2").to_string(), "power:-1/2");
    EXPECT_EQ(MeanSpec::parse("P"), MeanSpec::parse("seiffert1"));
    EXPECT_EQ(MeanSpec::parse("NS"), MeanSpec::parse("ns"));
    EXPECT_THROW(MeanSpec::parse("power"), ParseError);
    EXPECT_THROW(MeanSpec::parse("power:1,2"), ParseError);
    EXPECT_THROW(MeanSpec::parse("seiffert1:1"), ParseError);
    EXPECT_THROW(MeanSpec::parse("nosuch:1"), ParseError);
}

TEST(Catalog, BetweenMinAndMax)
{
    for (const char *spec : all_specs) {
        for (const auto &[s, t] : standard_grid()) {
            const BigFloat v = eval(spec, s, t);
            EXPECT_GE(v, BigFloat(s, prec)) << spec;
            EXPECT_LE(v, BigFloat(t, prec)) << spec;
        }
    }
}

TEST(Catalog, SymmetricAndHomogeneous)
{
    const Rational s(2, 3), t(9, 2), lambda(7, 3);
    for (const char *spec : all_specs) {
        const BigFloat a = eval(spec, s, t);
        EXPECT_LT(relative_error(a, eval(spec, t, s)), tol("1e-40")) << spec;
        const BigFloat scaled = eval(spec, lambda * s, lambda * t);
        EXPECT_LT(relative_error(scaled, BigFloat(lambda, prec) * a), tol("1e-40")) << spec;
    }
}

TEST(Catalog, KnownEmbeddings)
{
    const Rational s(1), t(5);
    auto same = [&](const char *a, const char *b) {
        EXPECT_LT(relative_error(eval(a, s, t), eval(b, s, t)), tol("1e-40")) << a << " vs " << b;
    };
    same("gini:0,3", "power:3");
    same("gini:1,-1", "geometric");
    same("stolarsky:4,2", "power:2");
    same("stolarsky:1,-1", "geometric");
    same("stolarsky:0,1", "logarithmic");
    same("stolarsky:1,1", "identric");
    same("genlog:-1", "logarithmic");
    same("genlog:0", "identric");
    same("genlog:1", "arithmetic");
    same("genlog:-2", "geometric");
    same("power:1", "arithmetic");
    same("power:-1", "harmonic");
    same("power:0", "geometric");
    // heron = (2A + G)/3
    const BigFloat h = (BigFloat(Rational(2), prec) * eval("arithmetic", s, t) + eval("geometric", s, t))
                       / BigFloat(Rational(3), prec);
    EXPECT_LT(relative_error(eval("heron", s, t), h), tol("1e-40"));
}

TEST(Catalog, ClosedForms)
{
    // P(1,3) = (3-1)/(2 asin(1/2)) = 6/pi
    const BigFloat six_over_pi = BigFloat(Rational(6), prec) / const_pi(prec);
    EXPECT_LT(relative_error(eval("seiffert1", Rational(1), Rational(3)), six_over_pi), tol("1e-40"));
    // T(1,3) = 1/atan(1/2)
    const BigFloat tv = BigFloat(Rational(1), prec) / atan(BigFloat(Rational(1, 2), prec));
    EXPECT_LT(relative_error(eval("seiffert2", Rational(1), Rational(3)), tv), tol("1e-40"));
}

TEST(Catalog, DiagonalIsIdentity)
{
    for (const char *spec : all_specs) {
        EXPECT_LT(relative_error(eval(spec, Rational(3), Rational(3)), BigFloat(Rational(3), prec)), tol("1e-40"))
            << spec;
    }
}

TEST(Catalog, SymbolicSpecializes)
{
    const auto sym = exact_coeffs_symbolic(Family::stolarsky, 4);
    const auto num = exact_coeffs(MeanSpec::parse("stolarsky:2/3,-5"), 4);
    for (std::size_t n = 0; n <= 4; ++n) {
        EXPECT_EQ(sym[n].eval({{"p", Rational(2, 3)}, {"r", Rational(-5)}}), num[n].rational()) << n;
    }
    const auto gl = exact_coeffs_symbolic(Family::genlog, 3);
    EXPECT_EQ(gl[3].eval({{"r", Rational(-1)}}), exact_coeffs(MeanSpec::parse("logarithmic"), 3)[3].rational());
}

TEST(Catalog, KnownCoefficients)
{
    // L(x-t,x+t) = 2t / log((x+t)/(x-t)) = x (1 - u^2/3 - 4u^4/45 - ...)
    const auto l = exact_coeffs(MeanSpec::parse("logarithmic"), 2);
    EXPECT_EQ(l[1].rational(), Rational(-1, 3));
    EXPECT_EQ(l[2].rational(), Rational(-4, 45));
    const auto g = exact_coeffs(MeanSpec::parse("geometric"), 3);
    EXPECT_EQ(g[1].rational(), Rational(-1, 2));
    EXPECT_EQ(g[2].rational(), Rational(-1, 8));
    EXPECT_EQ(g[3].rational(), Rational(-1, 16));
}

TEST(Oracle, AgreesWithExactForEveryFamily)
{
    for (const char *spec : all_specs) {
        const auto ms = MeanSpec::parse(spec);
        const auto exact = exact_coeffs(ms, 5);
        const auto num = oracle_coeffs(ms, 5, 256);
        for (std::size_t n = 0; n <= 5; ++n) {
            const BigFloat e(exact[n].rational(), 256);
            const BigFloat err = e.is_zero() ? abs(num[n]) : relative_error(num[n], e);
            EXPECT_LT(err, BigFloat(std::string("1e-12"), 256)) << spec << " a" << n;
        }
    }
}

TEST(Catalog, Errors)
{
    EXPECT_THROW(mean_eval(MeanSpec::parse("arithmetic"), Rational(-1), Rational(2), prec), DomainError);
    EXPECT_THROW(exact_coeffs_symbolic(Family::seiffert1, 2), DomainError);
}

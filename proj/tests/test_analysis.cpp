#include <gtest/gtest.h>

#include <meanexp/meanexp.hpp>

using namespace meanexp;

namespace
{

MeanCoeffs cat(const char *spec, std::size_t order)
{
    return exact_coeffs(MeanSpec::parse(spec), order);
}

} // namespace

TEST(Compare, ClassicalChain)
{
    // H < G < L < A asymptotically
    EXPECT_EQ(asym_compare(cat("arithmetic", 4), cat("geometric", 4), 4).verdict, AsymVerdict::asym_greater);
    EXPECT_EQ(asym_compare(cat("geometric", 4), cat("harmonic", 4), 4).verdict, AsymVerdict::asym_greater);
    EXPECT_EQ(asym_compare(cat("geometric", 4), cat("logarithmic", 4), 4).verdict, AsymVerdict::asym_less);
    const auto same = asym_compare(cat("power:0", 4), cat("geometric", 4), 4);
    EXPECT_EQ(same.verdict, AsymVerdict::equal_to_order);
    EXPECT_FALSE(same.first_nonzero_index);
}

TEST(Compare, FirstNonzeroIsReported)
{
    // P and NS share a_2 and differ at a_1 = -1/6 vs 1/6
    const auto r = asym_compare(cat("ns", 3), cat("seiffert1", 3), 3);
    EXPECT_EQ(r.verdict, AsymVerdict::asym_greater);
    EXPECT_EQ(r.first_nonzero_index, std::size_t{1});
    EXPECT_EQ(r.first_nonzero_value.rational(), Rational(1, 3));
}

TEST(Compare, SymbolicSignIsUndecidable)
{
    EXPECT_THROW(asym_compare(stable_coeffs(Scalar::variable("a1"), 3), cat("arithmetic", 3), 3), SymbolicUndecidable);
    const auto s = stable_coeffs(Scalar::variable("a1"), 3);
    EXPECT_EQ(asym_compare(s, s, 3).verdict, AsymVerdict::identically_zero_to_order);
}

TEST(Stability, CatalogMembers)
{
    for (const char *spec : {"power:3", "power:-1/2", "geometric", "gini:0,2", "stolarsky:4,2", "genlog:-1/2"}) {
        EXPECT_TRUE(is_stable(MeanSpec::parse(spec), 6).stable) << spec;
    }
    for (const char *spec : {"logarithmic", "identric", "seiffert1", "seiffert2", "ns", "heron", "gini:1,2"}) {
        const auto c = is_stable(MeanSpec::parse(spec), 6);
        EXPECT_FALSE(c.stable) << spec;
        EXPECT_EQ(c.first_failure, std::size_t{2}) << spec;
    }
    EXPECT_THROW(is_stable(MeanSpec::parse("power:2"), 1), OrderTooLow);
}

TEST(Stability, HigherOrderConditionSharesBranches)
{
    const auto r = stability_conditions(Family::genlog, {2, 3});
    ASSERT_EQ(r.conditions.size(), 2u);
    const Poly c2 = r.conditions[0].polynomial, c3 = r.conditions[1].polynomial;
    // every root of C2 also kills C3
    for (const auto &root : {Rational(1), Rational(-1, 2), Rational(-2)}) {
        EXPECT_TRUE(c2.eval({{"r", root}}).is_zero());
        EXPECT_TRUE(c3.eval({{"r", root}}).is_zero());
    }
    EXPECT_THROW(stability_conditions(Family::power, {2}), DomainError);
}

TEST(Disproof, LogarithmicSurvives)
{
    // L = R(A, L, G) = R(H, L, A): v = 0 and v = -1/2 must survive
    const auto d = stabilizable_disproof(MeanSpec::parse("logarithmic"), 4);
    EXPECT_EQ(d.verdict, "candidates_survive");
    std::vector<std::string> alive;
    for (const auto &c : d.candidates) {
        if (c.survives) {
            alive.push_back(c.value_string());
        }
    }
    std::sort(alive.begin(), alive.end());
    EXPECT_EQ(alive, (std::vector<std::string>{"-1/2", "0"}));
}

TEST(Disproof, SeiffertResidualsAreExact)
{
    const auto d = stabilizable_disproof(MeanSpec::parse("seiffert1"), 3);
    ASSERT_EQ(d.candidates.size(), 2u);
    for (const auto &c : d.candidates) {
        ASSERT_TRUE(c.failing_residual);
        EXPECT_EQ(*c.failing_residual, QuadraticSurd(Rational(1, 1134)));
    }
}

TEST(SubStab, SweepOfAcceptedSolutionIsNonnegative)
{
    const auto s = substab_optimize(MeanSpec::parse("seiffert1"), 3, 40, 128);
    ASSERT_EQ(s.solutions.size(), 2u);
    for (const auto &sol : s.solutions) {
        ASSERT_TRUE(sol.sweep);
        EXPECT_EQ(sol.sweep->points, 40u);
        EXPECT_EQ(sol.sweep->negative_points, 0u);
        EXPECT_EQ(sol.compare.verdict, AsymVerdict::asym_greater);
    }
}

TEST(SubStab, PowerMeanEvalLimits)
{
    const BigFloat s(Rational(1), 128), t(Rational(4), 128);
    EXPECT_LT(relative_error(power_mean_eval(BigFloat(0L, 128), s, t), BigFloat(Rational(2), 128)),
              BigFloat(std::string("1e-35"), 128));
    EXPECT_LT(relative_error(power_mean_eval(BigFloat(-1L, 128), s, t), BigFloat(Rational(8, 5), 128)),
              BigFloat(std::string("1e-35"), 128));
}

TEST(Simultaneous, BranchesHaveStableForm)
{
    for (auto c : {SimultaneousCase::stabilizable_swap, SimultaneousCase::stabilized_swap,
                   SimultaneousCase::stabilizable_and_stabilized}) {
        const auto r = simultaneous_conditions(c, 4);
        EXPECT_FALSE(r.branches.empty()) << to_string(c);
        for (const auto &b : r.branches) {
            EXPECT_TRUE(b.stable_form) << to_string(c) << " " << b.solved;
        }
    }
    EXPECT_THROW(simultaneous_conditions(SimultaneousCase::stabilized_swap, 2), OrderTooLow);
}

TEST(FunctionalEquation, NonStabilizableHasLargeResidual)
{
    const auto r = functional_eq_residual(MeanSpec::parse("arithmetic"), MeanSpec::parse("seiffert1"),
                                          MeanSpec::parse("geometric"), Relation::stabilizable, standard_grid(), 128);
    EXPECT_GT(r, BigFloat(std::string("1e-4"), 128));
}

TEST(Compound, GaussExamples)
{
    constexpr BigFloat::prec_t prec = 160;
    const BigFloat tol(std::string("1e-40"), prec);
    // A (x) H = G
    const BigFloat ah = compound_mean(MeanSpec::parse("arithmetic"), MeanSpec::parse("harmonic"),
                                      BigFloat(Rational(1), prec), BigFloat(Rational(4), prec), prec);
    EXPECT_LT(relative_error(ah, BigFloat(Rational(2), prec)), tol);
    // arithmetic-geometric mean of 1 and 2
    const BigFloat ag = compound_mean(MeanSpec::parse("arithmetic"), MeanSpec::parse("geometric"),
                                      BigFloat(Rational(1), prec), BigFloat(Rational(2), prec), prec);
    const BigFloat ref(std::string("1.456791031046906869186432383265081974973863943221305590"), prec);
    EXPECT_LT(relative_error(ag, ref), tol);
}

TEST(Invariants, CompareIsAntisymmetric)
{
    const std::vector<const char *> specs{"seiffert1", "seiffert2", "ns", "logarithmic", "identric", "heron",
                                          "power:2", "geometric"};
    for (const char *a : specs) {
        for (const char *b : specs) {
            const auto ab = asym_compare(cat(a, 4), cat(b, 4), 4), ba = asym_compare(cat(b, 4), cat(a, 4), 4);
            EXPECT_EQ(ab.first_nonzero_index, ba.first_nonzero_index) << a << " " << b;
            if (ab.verdict == AsymVerdict::asym_greater) {
                EXPECT_EQ(ba.verdict, AsymVerdict::asym_less) << a << " " << b;
            } else if (ab.verdict == AsymVerdict::asym_less) {
                EXPECT_EQ(ba.verdict, AsymVerdict::asym_greater) << a << " " << b;
            } else {
                EXPECT_EQ(ab.verdict, ba.verdict) << a << " " << b;
            }
        }
    }
}

// the exact order-3 residual must match the difference recomputed from
// floating values of p and q
TEST(Invariants, SubstabResidualMatchesNumericRecomputation)
{
    constexpr BigFloat::prec_t prec = 192;
    for (const char *name : {"seiffert1", "ns"}) {
        const MeanSpec target = MeanSpec::parse(name);
        const auto s = substab_optimize(target, 3, 10, 96);
        const auto exact = exact_coeffs(target, 3);
        for (const auto &sol : s.solutions) {
            const auto p = sol.p.to_bigfloat(prec), q = sol.q.to_bigfloat(prec);
            // a_3 of the stabilizable mean is a polynomial in (a1K, a1M) = ((p-1)/2, (q-1)/2)
            const auto k = stable_coeffs(Scalar::variable("u"), 3), m = stable_coeffs(Scalar::variable("v"), 3);
            const Poly a3 = stabilizable_coeffs(k, m, 3)[3].poly();
            const BigFloat half(Rational(1, 2), prec), one(1L, prec);
            const BigFloat u = (p - one) * half, v = (q - one) * half;
            BigFloat acc(prec);
            for (const auto &[mono, c] : a3.terms()) {
                BigFloat term(c, prec);
                for (std::size_t i = 0; i < mono.size(); ++i) {
                    term *= pow(a3.variables()[i] == "u" ? u : v, static_cast<long>(mono[i]));
                }
                acc += term;
            }
            const BigFloat numeric = BigFloat(exact[3].rational(), prec) - acc;
            ASSERT_FALSE(sol.residuals.empty());
            const BigFloat ex = sol.residuals.front().second.to_bigfloat(prec);
            EXPECT_LT(abs(numeric - ex), BigFloat(std::string("1e-20"), prec)) << name;
        }
    }
}

TEST(Invariants, StableMembersSatisfyFunctionalEquation)
{
    for (const char *spec : {"power:7/3", "gini:0,-3", "stolarsky:2/3,1/3", "genlog:-2", "genlog:1"}) {
        const auto ms = MeanSpec::parse(spec);
        ASSERT_TRUE(is_stable(ms, 10).stable) << spec;
        EXPECT_LT(functional_eq_residual(ms, ms, ms, Relation::stable, standard_grid(), 128),
                  BigFloat(std::string("1e-25"), 128))
            << spec;
    }
}

TEST(Invariants, DisproofIsBackedByExactResidual)
{
    for (const char *name : {"seiffert1", "seiffert2", "ns"}) {
        const auto d = stabilizable_disproof(MeanSpec::parse(name), 3);
        ASSERT_EQ(d.verdict, "inconsistent");
        for (const auto &c : d.candidates) {
            ASSERT_TRUE(c.failing_residual) << name;
            EXPECT_NE(c.failing_residual->sign(), 0) << name;
        }
    }
}

#ifndef MEANEXP_ANALYSIS_HPP
#define MEANEXP_ANALYSIS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <meanexp/bigfloat.hpp>
#include <meanexp/catalog.hpp>
#include <meanexp/error.hpp>
#include <meanexp/expansion.hpp>
#include <meanexp/factor.hpp>
#include <meanexp/poly.hpp>
#include <meanexp/rational.hpp>
#include <meanexp/scalar.hpp>
#include <meanexp/surd.hpp>

namespace meanexp
{

enum class AsymVerdict { asym_greater, asym_less, equal_to_order, identically_zero_to_order };

inline std::string to_string(AsymVerdict v)
{
    switch (v) {
        case AsymVerdict::asym_greater:
            return "asym_greater";
        case AsymVerdict::asym_less:
            return "asym_less";
        case AsymVerdict::equal_to_order:
            return "equal_to_order";
        case AsymVerdict::identically_zero_to_order:
            return "identically_zero_to_order";
    }
    return "unknown";
}

struct AsymCompareResult {
    AsymVerdict verdict = AsymVerdict::equal_to_order;
    std::optional<std::size_t> first_nonzero_index;
    Scalar first_nonzero_value;
};

// Sign of the first nonzero coefficient of a - b up to `order`.
inline AsymCompareResult asym_compare(const MeanCoeffs &a, const MeanCoeffs &b, std::size_t order)
{
    bool symbolic = false;
    for (std::size_t n = 0; n <= order; ++n) {
        const Scalar diff = a[n] - b[n];
        symbolic = symbolic || !a[n].is_rational() || !b[n].is_rational();
        if (diff.is_zero()) {
            continue;
        }
        if (!diff.is_rational()) {
            throw SymbolicUndecidable("first nonzero coefficient of the difference is " + diff.to_string()
                                      + ", whose sign depends on the parameters");
        }
        return {diff.rational().sign() > 0 ? AsymVerdict::asym_greater : AsymVerdict::asym_less, n, diff};
    }
    return {symbolic ? AsymVerdict::identically_zero_to_order : AsymVerdict::equal_to_order, std::nullopt, Scalar(0)};
}

// The same scan over an exact difference sequence with surd entries.
struct SurdCompareResult {
    AsymVerdict verdict = AsymVerdict::equal_to_order;
    std::optional<std::size_t> first_nonzero_index;
    QuadraticSurd first_nonzero_value;
};

inline SurdCompareResult asym_compare(const std::vector<QuadraticSurd> &difference)
{
    for (std::size_t n = 0; n < difference.size(); ++n) {
        const int s = difference[n].sign();
        if (s != 0) {
            return {s > 0 ? AsymVerdict::asym_greater : AsymVerdict::asym_less, n, difference[n]};
        }
    }
    return {};
}

struct ConditionEntry {
    std::size_t order = 0;
    Poly polynomial;
    std::optional<Factorization> factors;
};

// Findings of a stability check of a parametric family; necessary
// conditions only.
struct StabilityReport {
    Family family = Family::power;
    std::vector<ConditionEntry> conditions;
    std::vector<Poly> branches; // distinct factors of the lowest nontrivial condition
    std::vector<std::pair<std::string, Rational>> roots; // rational roots when univariate
};

inline StabilityReport stability_conditions(Family family, const std::vector<std::size_t> &orders)
{
    if (family != Family::gini && family != Family::stolarsky && family != Family::genlog) {
        throw DomainError("stability conditions are offered for gini, stolarsky and genlog");
    }
    std::size_t m_max = 2;
    for (auto m : orders) {
        if (m < 2) {
            throw OrderTooLow("stability conditions start at order 2");
        }
        m_max = std::max(m_max, m);
    }
    const auto sym = exact_coeffs_symbolic(family, m_max);
    const auto stable = stable_coeffs(sym[1], m_max);
    StabilityReport out;
    out.family = family;
    for (auto m : orders) {
        const Poly c = (sym[m] - stable[m]).poly();
        ConditionEntry e{m, c, std::nullopt};
        if (!c.is_zero()) {
            e.factors = factor_over_q(c);
        }
        out.conditions.push_back(std::move(e));
    }
    for (const auto &e : out.conditions) {
        if (!e.factors) {
            continue;
        }
        for (const auto &f : e.factors->factors) {
            out.branches.push_back(f.poly);
            if (f.poly.variables().size() == 1 && f.poly.degree() == 1) {
                const auto &v = f.poly.variables().front();
                const auto cs = f.poly.coefficients_in(v);
                out.roots.emplace_back(v, -cs[0].constant_value() / cs[1].constant_value());
            }
        }
        break;
    }
    return out;
}

struct StabilityCheck {
    bool stable = true;
    std::optional<std::size_t> first_failure;
};

// Compares the closed-form coefficients with the stable sequence that has
// the same a_1.
inline StabilityCheck is_stable(const MeanSpec &spec, std::size_t order)
{
    if (order < 2) {
        throw OrderTooLow("stability check needs order >= 2");
    }
    const auto a = exact_coeffs(spec, order);
    const auto s = stable_coeffs(a[1], order);
    for (std::size_t n = 2; n <= order; ++n) {
        if (a[n] != s[n]) {
            return {false, n};
        }
    }
    return {};
}

// One candidate value of v: a rational, a conjugate surd root of an
// irreducible quadratic, or a numerically isolated root of a higher factor.
struct Candidate {
    UPoly minimal_polynomial;
    std::optional<QuadraticSurd> exact;
    std::optional<BigFloat> approx;
    std::vector<std::pair<std::size_t, std::string>> residuals;
    std::optional<QuadraticSurd> failing_residual;
    std::optional<std::size_t> failing_order;
    bool survives = true;

    std::string value_string() const
    {
        return exact ? exact->to_string() : approx->to_string(30);
    }
};

struct DisproofReport {
    MeanSpec target;
    Poly u_in_v; // u eliminated with the order-1 equation
    std::vector<ConditionEntry> conditions; // orders >= 2 after elimination, in v
    std::size_t defining_order = 0;
    std::vector<Candidate> candidates;
    std::string verdict; // "inconsistent", "inconsistent_numeric", "candidates_survive"
};

namespace detail
{

inline Poly linear_solve(const Poly &eq, const std::string &var)
{
    if (eq.degree_in(var) != 1) {
        throw DomainError("equation " + eq.to_string() + " is not linear in " + var);
    }
    const auto cs = eq.coefficients_in(var);
    if (!cs[1].is_constant()) {
        throw DomainError("coefficient of " + var + " in " + eq.to_string() + " is not constant");
    }
    return (-cs[0]).divided_by(cs[1].constant_value());
}

inline std::vector<Candidate> candidates_of(const Factorization &f, BigFloat::prec_t prec)
{
    std::vector<Candidate> out;
    for (const auto &pf : f.factors) {
        const std::string var = pf.poly.variables().front();
        const UPoly u = UPoly::from_poly(pf.poly, var);
        if (u.degree() == 1) {
            Candidate c;
            c.minimal_polynomial = u;
            c.exact = QuadraticSurd(-u.c[0] / u.c[1]);
            out.push_back(std::move(c));
        } else if (u.degree() == 2) {
            for (const auto &r : quadratic_roots(u)) {
                Candidate c;
                c.minimal_polynomial = u;
                c.exact = r;
                out.push_back(std::move(c));
            }
        } else {
            for (const auto &iv : isolate_real_roots(u, static_cast<unsigned>(prec))) {
                Candidate c;
                c.minimal_polynomial = u;
                c.approx = BigFloat((iv.lo + iv.hi) / Rational(2), prec);
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

} // namespace detail

// Tries to write `target` as (K, M)-stabilizable with K, M stable, a_1^K = u,
// a_1^M = v. Every candidate (u, v) left by orders 1 and 2 is checked
// exactly against the higher orders.
inline DisproofReport stabilizable_disproof(const MeanSpec &target, std::size_t order,
                                            BigFloat::prec_t precision = 192)
{
    if (order < 3) {
        throw OrderTooLow("stabilizability disproof needs order >= 3");
    }
    const auto t = exact_coeffs(target, order);
    const auto aK = stable_coeffs(Scalar::variable("u"), order);
    const auto aM = stable_coeffs(Scalar::variable("v"), order);
    const auto n = stabilizable_coeffs(aK, aM, order);

    DisproofReport out;
    out.target = target;
    out.u_in_v = detail::linear_solve((t[1] - n[1]).poly(), "u");
    std::vector<UPoly> eqs(order + 1);
    for (std::size_t m = 2; m <= order; ++m) {
        const Poly c = (t[m] - n[m]).poly().substitute("u", out.u_in_v);
        eqs[m] = UPoly::from_poly(c, "v");
        ConditionEntry e{m, c, std::nullopt};
        if (!c.is_zero() && !c.is_constant()) {
            e.factors = factor_over_q(c);
        }
        out.conditions.push_back(std::move(e));
    }
    std::size_t k = 2;
    while (k <= order && eqs[k].is_zero()) {
        ++k;
    }
    out.defining_order = k;
    if (k > order) {
        out.verdict = "candidates_survive";
        return out;
    }
    if (eqs[k].degree() == 0) {
        Candidate c;
        c.survives = false;
        c.failing_order = k;
        c.failing_residual = QuadraticSurd(eqs[k].c[0]);
        c.residuals.emplace_back(k, eqs[k].c[0].to_string());
        out.candidates.push_back(std::move(c));
        out.verdict = "inconsistent";
        return out;
    }
    out.candidates = detail::candidates_of(factor_over_q(eqs[k].to_poly("v")), precision);
    BigFloat tol(1L, precision);
    mpfr_mul_2si(tol.raw(), tol.raw(), -static_cast<long>(precision / 2), MPFR_RNDN);
    bool numeric_only = false;
    for (auto &c : out.candidates) {
        for (std::size_t m = k + 1; m <= order; ++m) {
            if (c.exact) {
                const QuadraticSurd r = eqs[m].eval(*c.exact);
                c.residuals.emplace_back(m, r.to_string());
                if (!r.is_zero() && c.survives) {
                    c.survives = false;
                    c.failing_order = m;
                    c.failing_residual = r;
                }
            } else {
                const BigFloat r = eqs[m].eval(*c.approx);
                c.residuals.emplace_back(m, r.to_string(20));
                if (abs(r) > tol && c.survives) {
                    c.survives = false;
                    c.failing_order = m;
                    numeric_only = true;
                }
            }
        }
    }
    bool any = false;
    for (const auto &c : out.candidates) {
        any = any || c.survives;
    }
    out.verdict = any ? "candidates_survive" : (numeric_only ? "inconsistent_numeric" : "inconsistent");
    return out;
}

struct SweepResult {
    BigFloat min_value;
    BigFloat argmin;
    std::size_t negative_points = 0;
    std::size_t points = 0;
};

struct SubStabSolution {
    QuadraticSurd p, q;
    std::vector<std::pair<std::size_t, QuadraticSurd>> residuals; // orders >= 3
    SurdCompareResult compare;
    std::optional<SweepResult> sweep; // run when the asymptotic sign is right
    bool accepted = false;
};

struct SubStabReport {
    MeanSpec target;
    Poly order1;           // coefficient 1 of target - N in (p, q)
    Poly p_in_q;           // from coefficient 1 = 0
    std::vector<ConditionEntry> conditions; // orders >= 2 after substitution
    std::vector<SubStabSolution> solutions;
    std::string verdict; // "asym_greater", "asym_less", "no_double_zero"
    std::string constraint; // when there is no double zero
};

namespace detail
{

// "|2 a q + b| >= sqrt(b^2 - 4 a c)" for a q^2 + b q + c >= 0 with a > 0.
inline std::string quadratic_constraint(const UPoly &prim, const std::string &var, bool nonnegative)
{
    const Rational &a = prim.c[2], &b = prim.c[1], &c = prim.c[0];
    const Rational disc = b * b - Rational(4) * a * c;
    const Poly lin = Poly::variable(var).scaled(Rational(2) * a) + Poly(b);
    const QuadraticSurd root(Rational(0), Rational(1), disc.numerator() * disc.denominator());
    const std::string bound = disc.denominator() == 1 ? root.to_string()
                                                      : root.to_string() + "/" + disc.denominator().get_str();
    return "|" + lin.to_string() + "| " + (nonnegative ? ">=" : "<=") + " " + bound;
}

} // namespace detail

// Power mean with a real exponent.
inline BigFloat power_mean_eval(const BigFloat &r, const BigFloat &s, const BigFloat &t)
{
    const BigFloat::prec_t w = std::max({r.precision(), s.precision(), t.precision()});
    if (s == t) {
        return s;
    }
    if (r.is_zero()) {
        return sqrt(s * t);
    }
    const BigFloat two(2L, w), one(1L, w);
    return pow((pow(s, r) + pow(t, r)) / two, one / r);
}

// target(s, 1-s) - R(B_p, target, B_q)(s, 1-s) at the midpoints
// s = (i - 1/2)/points; numeric evidence only.
inline SweepResult substab_sweep(const MeanSpec &target, const QuadraticSurd &p, const QuadraticSurd &q,
                                 std::size_t points, BigFloat::prec_t precision)
{
    const BigFloat pb = p.to_bigfloat(precision), qb = q.to_bigfloat(precision);
    const BigFloat one(1L, precision);
    SweepResult out{BigFloat(precision), BigFloat(precision), 0, points};
    bool first = true;
    for (std::size_t i = 1; i <= points; ++i) {
        const BigFloat s(Rational(static_cast<long>(2 * i - 1), static_cast<long>(2 * points)), precision);
        const BigFloat t = one - s;
        const BigFloat mv = power_mean_eval(qb, s, t);
        const BigFloat rv = power_mean_eval(pb, mean_eval(target, s, mv, precision), mean_eval(target, mv, t, precision));
        const BigFloat diff = mean_eval(target, s, t, precision) - rv;
        if (diff.sign() < 0) {
            ++out.negative_points;
        }
        if (first || diff < out.min_value) {
            out.min_value = diff;
            out.argmin = s;
            first = false;
        }
    }
    return out;
}

// Best (p, q) for target versus R(B_p, target, B_q): zero out coefficients 1
// and 2 of target - N, where N is the (B_p, B_q)-stabilizable sequence, and
// read the sign of the next one. A double zero with the right sign is kept
// only if the difference stays nonnegative on a sweep of (s, 1-s).
inline SubStabReport substab_optimize(const MeanSpec &target, std::size_t order, std::size_t sweep_points = 100,
                                      BigFloat::prec_t sweep_precision = 128)
{
    if (order < 3) {
        throw OrderTooLow("sub-stabilizability optimization needs order >= 3");
    }
    const auto t = exact_coeffs(target, order);
    const Scalar p = Scalar::variable("p"), q = Scalar::variable("q");
    const auto aK = stable_coeffs((p - Scalar(1)) / Rational(2), order);
    const auto aM = stable_coeffs((q - Scalar(1)) / Rational(2), order);
    const auto n = stabilizable_coeffs(aK, aM, order);

    SubStabReport out;
    out.target = target;
    out.order1 = (t[1] - n[1]).poly();
    out.p_in_q = detail::linear_solve(out.order1, "p");
    std::vector<Poly> diffs(order + 1);
    for (std::size_t m = 2; m <= order; ++m) {
        diffs[m] = (t[m] - n[m]).poly().substitute("p", out.p_in_q);
        ConditionEntry e{m, diffs[m], std::nullopt};
        if (!diffs[m].is_zero() && !diffs[m].is_constant()) {
            e.factors = factor_over_q(diffs[m]);
        }
        out.conditions.push_back(std::move(e));
    }
    const UPoly d2 = UPoly::from_poly(diffs[2], "q");
    std::vector<QuadraticSurd> roots;
    if (d2.degree() >= 1) {
        for (const auto &f : factor_over_q(diffs[2]).factors) {
            const UPoly u = UPoly::from_poly(f.poly, "q");
            if (u.degree() == 1) {
                roots.emplace_back(-u.c[0] / u.c[1]);
            } else if (u.degree() == 2) {
                for (const auto &r : quadratic_roots(u)) {
                    roots.push_back(r);
                }
            } else {
                throw UnsupportedLimitCase("coefficient 2 has an irreducible factor of degree > 2: " + f.poly.to_string());
            }
        }
    }
    const UPoly p_of_q = UPoly::from_poly(out.p_in_q, "q");
    bool any_accepted = false;
    for (const auto &r : roots) {
        SubStabSolution s;
        s.q = r;
        s.p = p_of_q.eval(r);
        std::vector<QuadraticSurd> tail;
        for (std::size_t m = 3; m <= order; ++m) {
            const QuadraticSurd v = UPoly::from_poly(diffs[m], "q").eval(r);
            s.residuals.emplace_back(m, v);
            tail.push_back(v);
        }
        s.compare = asym_compare(tail);
        if (s.compare.first_nonzero_index) {
            *s.compare.first_nonzero_index += 3;
        }
        if (s.compare.verdict == AsymVerdict::asym_greater) {
            s.sweep = substab_sweep(target, s.p, s.q, sweep_points, sweep_precision);
            s.accepted = s.sweep->negative_points == 0;
        }
        any_accepted = any_accepted || s.accepted;
        out.solutions.push_back(std::move(s));
    }
    if (any_accepted) {
        out.verdict = "asym_greater";
        return out;
    }
    out.verdict = "no_double_zero";
    if (d2.degree() == 2) {
        const UPoly prim = d2.primitive();
        const bool same_sign = (d2.lead().sign() > 0);
        out.constraint = detail::quadratic_constraint(prim, "q", same_sign);
    } else if (d2.degree() <= 0) {
        out.verdict = d2.is_zero() ? "no_double_zero" : (d2.c[0].sign() > 0 ? "asym_greater" : "asym_less");
    }
    return out;
}

enum class SimultaneousCase { stabilizable_swap, stabilized_swap, stabilizable_and_stabilized };

inline std::string to_string(SimultaneousCase c)
{
    switch (c) {
        case SimultaneousCase::stabilizable_swap:
            return "stabilizable_swap";
        case SimultaneousCase::stabilized_swap:
            return "stabilized_swap";
        case SimultaneousCase::stabilizable_and_stabilized:
            return "stabilizable_and_stabilized";
    }
    return "unknown";
}

struct SimultaneousBranch {
    Poly factor;          // the factor set to zero
    std::string solved;   // e.g. "a1N = a1K"
    std::vector<Scalar> coefficients; // of the mean in question, a_0..a_order
    bool stable_form = false;
    std::vector<ConditionEntry> remaining; // nonzero conditions after substitution
};

struct SimultaneousReport {
    SimultaneousCase which = SimultaneousCase::stabilized_swap;
    std::string subject; // name of the mean whose coefficients are listed
    std::vector<ConditionEntry> conditions;
    std::vector<SimultaneousBranch> branches;
};

namespace detail
{

inline bool has_stable_form(const std::vector<Scalar> &c)
{
    if (c.size() < 2) {
        return true;
    }
    const auto s = stable_coeffs(c[1], c.size() - 1);
    for (std::size_t n = 2; n < c.size(); ++n) {
        if (s[n] != c[n]) {
            return false;
        }
    }
    return true;
}

} // namespace detail

// Necessary conditions for a mean to play two roles at once; the first
// nonvanishing condition is factored and every linear factor is followed.
inline SimultaneousReport simultaneous_conditions(SimultaneousCase which, std::size_t order)
{
    if (order < 3) {
        throw OrderTooLow("simultaneous conditions need order >= 3");
    }
    SimultaneousReport out;
    out.which = which;
    MeanCoeffs left, right;
    std::vector<std::string> vars;
    switch (which) {
        case SimultaneousCase::stabilizable_swap: {
            const auto k = stable_coeffs(Scalar::variable("a1K"), order);
            const auto m = stable_coeffs(Scalar::variable("a1M"), order);
            left = stabilizable_coeffs(k, m, order);
            right = stabilizable_coeffs(m, k, order);
            out.subject = "N";
            vars = {"a1K", "a1M"};
            break;
        }
        case SimultaneousCase::stabilized_swap: {
            const auto k = stable_coeffs(Scalar::variable("a1K"), order);
            const auto nn = stable_coeffs(Scalar::variable("a1N"), order);
            left = stabilized_coeffs(k, nn, order);
            right = stabilized_coeffs(nn, k, order);
            out.subject = "M";
            vars = {"a1K", "a1N"};
            break;
        }
        case SimultaneousCase::stabilizable_and_stabilized: {
            const auto k = stable_coeffs(Scalar::variable("a1K"), order);
            const auto nn = stable_coeffs(Scalar::variable("a1N"), order);
            left = stabilizable_coeffs(k, nn, order);
            right = stabilized_coeffs(k, nn, order);
            out.subject = "M";
            vars = {"a1K", "a1N"};
            break;
        }
    }
    std::optional<Factorization> first;
    for (std::size_t m = 1; m <= order; ++m) {
        const Poly c = with_variable_order((left[m] - right[m]).poly(), vars);
        ConditionEntry e{m, c, std::nullopt};
        if (!c.is_zero() && !c.is_constant()) {
            e.factors = factor_over_q(c);
            if (!first) {
                first = e.factors;
            }
        }
        out.conditions.push_back(std::move(e));
    }
    if (!first) {
        return out;
    }
    const std::string subject_a1 = "a1" + out.subject;
    for (const auto &f : first->factors) {
        if (f.poly.degree() != 1) {
            continue;
        }
        std::string var;
        for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
            if (f.poly.has_variable(*it)) {
                var = *it;
                break;
            }
        }
        SimultaneousBranch b;
        b.factor = f.poly;
        const Poly value = detail::linear_solve(f.poly, var);
        b.solved = var + " = " + value.to_string();
        for (std::size_t m = 0; m <= order; ++m) {
            b.coefficients.push_back(Scalar(left[m].poly().substitute(var, value)));
        }
        // express the result through the subject's own a_1 when it is a bare variable
        const Poly a1 = b.coefficients[1].poly();
        if (a1.variables().size() == 1 && a1 == Poly::variable(a1.variables().front())) {
            const std::string old = a1.variables().front();
            for (auto &c : b.coefficients) {
                c = c.substitute(old, Scalar::variable(subject_a1));
            }
        }
        b.stable_form = detail::has_stable_form(b.coefficients);
        for (std::size_t m = 1; m <= order; ++m) {
            const Poly c = with_variable_order((left[m] - right[m]).poly().substitute(var, value), vars);
            if (!c.is_zero()) {
                ConditionEntry e{m, c, std::nullopt};
                if (!c.is_constant()) {
                    e.factors = factor_over_q(c);
                }
                b.remaining.push_back(std::move(e));
            }
        }
        out.branches.push_back(std::move(b));
    }
    return out;
}

enum class Relation { stable, stabilizable, stabilized };

inline std::string to_string(Relation r)
{
    switch (r) {
        case Relation::stable:
            return "stable";
        case Relation::stabilizable:
            return "stabilizable";
        case Relation::stabilized:
            return "stabilized";
    }
    return "unknown";
}

using SamplePoint = std::pair<Rational, Rational>;

inline const std::vector<SamplePoint> &standard_grid()
{
    static const std::vector<SamplePoint> grid{
        {Rational(1), Rational(2)}, {Rational(1), Rational(4)}, {Rational(3), Rational(7)}, {Rational(1), Rational(100)}};
    return grid;
}

// R(K, N, M)(s, t) = K(N(s, M(s,t)), N(M(s,t), t))
inline BigFloat resultant_eval(const MeanSpec &k, const MeanSpec &n, const MeanSpec &m, const BigFloat &s,
                               const BigFloat &t, BigFloat::prec_t precision)
{
    const BigFloat mv = mean_eval(m, s, t, precision);
    return mean_eval(k, mean_eval(n, s, mv, precision), mean_eval(n, mv, t, precision), precision);
}

// Max relative residual of the defining equation: M = R(M,M,M) for stable,
// N = R(K,N,M) for stabilizable, M = R(K,N,M) for stabilized.
inline BigFloat functional_eq_residual(const MeanSpec &k, const MeanSpec &n, const MeanSpec &m, Relation relation,
                                       const std::vector<SamplePoint> &samples, BigFloat::prec_t precision)
{
    const BigFloat::prec_t w = precision + 32;
    BigFloat worst(precision);
    for (const auto &[s_r, t_r] : samples) {
        const BigFloat s(s_r, w), t(t_r, w);
        BigFloat lhs(w), rhs(w);
        if (relation == Relation::stable) {
            lhs = mean_eval(m, s, t, w);
            rhs = resultant_eval(m, m, m, s, t, w);
        } else {
            lhs = mean_eval(relation == Relation::stabilizable ? n : m, s, t, w);
            rhs = resultant_eval(k, n, m, s, t, w);
        }
        const BigFloat r = relative_error(rhs, lhs).with_precision(precision);
        if (r > worst) {
            worst = r;
        }
    }
    return worst;
}

// Gauss compound mean: s <- K(s,t), t <- N(s,t) until the two agree to
// 2^{16 - precision} relative.
inline BigFloat compound_mean(const MeanSpec &k, const MeanSpec &n, const BigFloat &s0, const BigFloat &t0,
                              BigFloat::prec_t precision, std::size_t max_iterations = 500)
{
    const BigFloat::prec_t w = precision + 32;
    BigFloat s = s0.with_precision(w), t = t0.with_precision(w);
    BigFloat tol(1L, w);
    mpfr_mul_2si(tol.raw(), tol.raw(), 16 - static_cast<long>(precision), MPFR_RNDN);
    for (std::size_t i = 0; i < max_iterations; ++i) {
        if (relative_error(s, t) <= tol) {
            return ((s + t) / BigFloat(2L, w)).with_precision(precision);
        }
        BigFloat s1 = mean_eval(k, s, t, w);
        BigFloat t1 = mean_eval(n, s, t, w);
        s = std::move(s1);
        t = std::move(t1);
    }
    throw NonConvergence("compound mean did not converge in " + std::to_string(max_iterations)
                         + " iterations; gap " + relative_error(s, t).to_string(6));
}

} // namespace meanexp

#endif

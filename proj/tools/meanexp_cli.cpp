// meanexp: asymptotic expansions of stable, stabilizable and stabilized means.

#include <cstddef>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <meanexp/meanexp.hpp>

namespace
{

using namespace meanexp;

struct Options {
    std::string mean, k, n, m, a1, family, relation, format = "text";
    std::string s = "1", t = "2";
    std::size_t order = 4;
    long precision = 192;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_symbolic(const std::string &text)
{
    return text == "symbolic";
}

MeanSpec spec_of(const std::string &text, const char *flag)
{
    if (text.empty()) {
        throw UsageError(std::string("missing ") + flag);
    }
    try {
        return MeanSpec::parse(text);
    } catch (const ParseError &e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

Rational rational_of(const std::string &text, const char *flag)
{
    try {
        return Rational::parse(text);
    } catch (const ParseError &e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

// A family name without parameters selects the symbolic-parameter expansion.
std::optional<Family> bare_family(const std::string &text)
{
    if (text.find(':') != std::string::npos) {
        return std::nullopt;
    }
    try {
        const Family f = parse_family(text);
        if (f == Family::power || f == Family::gini || f == Family::stolarsky || f == Family::genlog) {
            return f;
        }
    } catch (const ParseError &) {
    }
    return std::nullopt;
}

// Stable means for the stabilizable/stabilized subcommands: a catalog spec
// or "symbolic" for a stable mean with free a_1.
MeanCoeffs stable_input(const std::string &text, const char *flag, const std::string &tag, std::size_t order)
{
    if (is_symbolic(text)) {
        return stable_coeffs(Scalar::variable("a1" + tag), order);
    }
    return exact_coeffs(spec_of(text, flag), order);
}

// Any mean for the resultant subcommand: a catalog spec or "symbolic" for
// a fully generic coefficient list.
MeanCoeffs generic_input(const std::string &text, const char *flag, const std::string &tag, std::size_t order)
{
    if (is_symbolic(text)) {
        return symbolic_mean(tag, order);
    }
    return exact_coeffs(spec_of(text, flag), order);
}

Relation relation_of(const std::string &text)
{
    if (text == "stable") {
        return Relation::stable;
    }
    if (text == "stabilizable") {
        return Relation::stabilizable;
    }
    if (text == "stabilized") {
        return Relation::stabilized;
    }
    throw UsageError("--relation must be stable, stabilizable or stabilized");
}

Report run_expand(const Options &o)
{
    if (const auto f = bare_family(o.mean)) {
        return coefficients_report("expand", family_name(*f), exact_coeffs_symbolic(*f, o.order));
    }
    const MeanSpec spec = spec_of(o.mean, "--mean");
    return coefficients_report("expand", spec.to_string(), exact_coeffs(spec, o.order));
}

Report run_stable(const Options &o)
{
    if (o.a1.empty()) {
        throw UsageError("missing --a1");
    }
    const Scalar a1 = is_symbolic(o.a1) ? Scalar::variable("a1") : Scalar(rational_of(o.a1, "--a1"));
    return coefficients_report("stable", "a1 = " + a1.to_string(), stable_coeffs(a1, o.order));
}

Report run_check_stability(const Options &o)
{
    if (!o.family.empty() || bare_family(o.mean)) {
        const std::string name = o.family.empty() ? o.mean : o.family;
        Family f{};
        try {
            f = parse_family(name);
        } catch (const ParseError &e) {
            throw UsageError(std::string("--family: ") + e.what());
        }
        std::vector<std::size_t> orders;
        for (std::size_t m = 2; m <= std::max<std::size_t>(o.order, 2); ++m) {
            orders.push_back(m);
        }
        return to_report(stability_conditions(f, orders));
    }
    const MeanSpec spec = spec_of(o.mean, "--mean");
    return to_report(spec, is_stable(spec, o.order), o.order);
}

Report run_compare(const Options &o)
{
    const MeanSpec lhs = spec_of(o.mean, "--mean");
    const auto a = exact_coeffs(lhs, o.order);
    if (o.k.empty() && o.m.empty()) {
        const MeanSpec rhs = spec_of(o.n, "--n");
        return compare_report(short_name(lhs), short_name(rhs), asym_compare(a, exact_coeffs(rhs, o.order), o.order));
    }
    const MeanSpec k = spec_of(o.k, "--k"), m = spec_of(o.m, "--m");
    const MeanSpec n = o.n.empty() ? lhs : spec_of(o.n, "--n");
    const auto r = resultant_coeffs(exact_coeffs(k, o.order), exact_coeffs(n, o.order), exact_coeffs(m, o.order), o.order);
    const std::string rhs = "R(" + short_name(k) + "," + short_name(n) + "," + short_name(m) + ")";
    return compare_report(short_name(lhs), rhs, asym_compare(a, r, o.order));
}

Report run_verify(const Options &o)
{
    const auto prec = static_cast<BigFloat::prec_t>(o.precision);
    if (!o.relation.empty()) {
        const Relation rel = relation_of(o.relation);
        // --mean names the mean under test; it fills N for stabilizable and
        // M otherwise, the remaining roles come from --k/--n/--m
        const bool target_n = rel == Relation::stabilizable;
        const MeanSpec m = spec_of(!target_n && !o.mean.empty() ? o.mean : o.m, "--m");
        const MeanSpec n = rel == Relation::stable ? m : spec_of(target_n && !o.mean.empty() ? o.mean : o.n, "--n");
        const MeanSpec k = rel == Relation::stable ? m : spec_of(o.k, "--k");
        const BigFloat res = functional_eq_residual(k, n, m, rel, standard_grid(), prec);
        Report r;
        r.kind = "verify";
        r.subject = to_string(rel) + " K=" + k.to_string() + " N=" + n.to_string() + " M=" + m.to_string();
        r.values["max_relative_residual"] = res.to_string(6);
        r.values["grid"] = "(1,2) (1,4) (3,7) (1,100)";
        r.values["precision"] = std::to_string(o.precision);
        r.summary = "functional equation residual " + res.to_string(6);
        return r;
    }
    const MeanSpec spec = spec_of(o.mean, "--mean");
    const auto exact = exact_coeffs(spec, o.order);
    const auto oracle = oracle_coeffs(spec, o.order, prec);
    Report r;
    r.kind = "verify";
    r.subject = spec.to_string();
    BigFloat worst(prec);
    for (std::size_t n = 0; n <= o.order; ++n) {
        const BigFloat e = relative_error(oracle[n], BigFloat(exact[n].rational(), prec));
        worst = e > worst ? e : worst;
        r.residuals.push_back({static_cast<long>(n), e.to_string(6), "oracle " + oracle[n].to_string(25)});
    }
    r.coefficients = exact.seq.to_strings();
    r.values["max_relative_error"] = worst.to_string(6);
    r.summary = "oracle vs exact coefficients of " + spec.to_string() + ": max relative error " + worst.to_string(6);
    return r;
}

Report run_compound(const Options &o)
{
    const MeanSpec k = spec_of(o.k, "--k"), n = spec_of(o.n, "--n");
    const auto prec = static_cast<BigFloat::prec_t>(o.precision);
    const BigFloat s(rational_of(o.s, "--s"), prec), t(rational_of(o.t, "--t"), prec);
    const BigFloat v = compound_mean(k, n, s, t, prec);
    Report r;
    r.kind = "compound";
    r.subject = short_name(k) + " (x) " + short_name(n);
    r.values["s"] = o.s;
    r.values["t"] = o.t;
    r.values["value"] = v.to_string(static_cast<std::size_t>(o.precision * 3 / 10));
    r.summary = r.subject + " at (" + o.s + ", " + o.t + ") = " + v.to_string(30);
    return r;
}

void print(const Report &r, const std::string &format)
{
    if (format == "json") {
        std::cout << render_json(r);
    } else if (format == "latex") {
        std::cout << render_latex(r);
    } else {
        std::cout << render_text(r);
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Asymptotic expansions of stable, stabilizable and stabilized means"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App *sub) {
        sub->add_option("--order", o.order, "maximum coefficient index");
        sub->add_option("--format", o.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
    };
    auto add_mean = [&o](CLI::App *sub, const char *help) { sub->add_option("--mean,--target", o.mean, help); };
    auto add_precision = [&o](CLI::App *sub) { sub->add_option("--precision", o.precision, "bits")->check(CLI::Range(64L, 100000L)); };

    auto *expand = app.add_subcommand("expand", "coefficients of a catalog mean (family name alone: symbolic parameters)");
    add_mean(expand, "mean spec, e.g. power:2, seiffert1, gini");
    add_common(expand);

    auto *stable = app.add_subcommand("stable", "coefficients of the stable mean with given a_1");
    stable->add_option("--a1", o.a1, "rational or 'symbolic'");
    add_common(stable);

    auto *stabilizable = app.add_subcommand("stabilizable", "coefficients of the (K,M)-stabilizable mean");
    stabilizable->add_option("--k", o.k, "stable mean spec or 'symbolic'");
    stabilizable->add_option("--m", o.m, "stable mean spec or 'symbolic'");
    add_common(stabilizable);

    auto *stabilized = app.add_subcommand("stabilized", "coefficients of the (K,N)-stabilized mean");
    stabilized->add_option("--k", o.k, "stable mean spec or 'symbolic'");
    stabilized->add_option("--n", o.n, "stable mean spec or 'symbolic'");
    add_common(stabilized);

    auto *resultant = app.add_subcommand("resultant", "coefficients of R(K,N,M)");
    resultant->add_option("--k", o.k, "mean spec or 'symbolic'");
    resultant->add_option("--n", o.n, "mean spec or 'symbolic'");
    resultant->add_option("--m", o.m, "mean spec or 'symbolic'");
    add_common(resultant);

    auto *check = app.add_subcommand("check-stability", "stability test of a mean, or conditions for a family");
    add_mean(check, "mean spec");
    check->add_option("--family", o.family, "gini, stolarsky or genlog");
    add_common(check);

    auto *disprove = app.add_subcommand("disprove", "(K,M)-stabilizability test with stable K, M");
    add_mean(disprove, "target mean spec");
    add_common(disprove);

    auto *substab = app.add_subcommand("substab", "optimal (p,q) for target vs R(B_p,target,B_q)");
    add_mean(substab, "target mean spec");
    add_common(substab);

    auto *simultaneous = app.add_subcommand("simultaneous", "necessary conditions for two roles at once");
    std::string which = "stabilized_swap";
    simultaneous->add_option("--case", which, "stabilizable_swap, stabilized_swap or stabilizable_and_stabilized")
        ->check(CLI::IsMember({"stabilizable_swap", "stabilized_swap", "stabilizable_and_stabilized"}));
    add_common(simultaneous);

    auto *compare = app.add_subcommand("compare", "asymptotic sign of mean - R(K,N,M), or of mean - N");
    add_mean(compare, "left-hand mean spec");
    compare->add_option("--k", o.k, "mean spec");
    compare->add_option("--n", o.n, "mean spec (defaults to --mean inside R)");
    compare->add_option("--m", o.m, "mean spec");
    add_common(compare);

    auto *verify = app.add_subcommand("verify", "numeric oracle vs exact coefficients, or functional-equation residual");
    add_mean(verify, "mean spec");
    verify->add_option("--k", o.k, "mean spec");
    verify->add_option("--n", o.n, "mean spec");
    verify->add_option("--m", o.m, "mean spec");
    verify->add_option("--relation", o.relation, "stable, stabilizable or stabilized");
    add_precision(verify);
    add_common(verify);

    auto *compound = app.add_subcommand("compound", "Gauss compound mean of K and N");
    compound->add_option("--k", o.k, "mean spec");
    compound->add_option("--n", o.n, "mean spec");
    compound->add_option("--s", o.s, "first argument (rational)");
    compound->add_option("--t", o.t, "second argument (rational)");
    add_precision(compound);
    add_common(compound);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Report r;
        if (expand->parsed()) {
            r = run_expand(o);
        } else if (stable->parsed()) {
            r = run_stable(o);
        } else if (stabilizable->parsed()) {
            r = coefficients_report("stabilizable", "K=" + o.k + " M=" + o.m,
                                    stabilizable_coeffs(stable_input(o.k, "--k", "K", o.order),
                                                        stable_input(o.m, "--m", "M", o.order), o.order));
        } else if (stabilized->parsed()) {
            r = coefficients_report("stabilized", "K=" + o.k + " N=" + o.n,
                                    stabilized_coeffs(stable_input(o.k, "--k", "K", o.order),
                                                      stable_input(o.n, "--n", "N", o.order), o.order));
        } else if (resultant->parsed()) {
            r = coefficients_report("resultant", "K=" + o.k + " N=" + o.n + " M=" + o.m,
                                    resultant_coeffs(generic_input(o.k, "--k", "K", o.order),
                                                     generic_input(o.n, "--n", "N", o.order),
                                                     generic_input(o.m, "--m", "M", o.order), o.order));
        } else if (check->parsed()) {
            r = run_check_stability(o);
        } else if (disprove->parsed()) {
            r = to_report(stabilizable_disproof(spec_of(o.mean, "--mean"), o.order));
        } else if (substab->parsed()) {
            r = to_report(substab_optimize(spec_of(o.mean, "--mean"), o.order));
        } else if (simultaneous->parsed()) {
            const SimultaneousCase c = which == "stabilizable_swap" ? SimultaneousCase::stabilizable_swap
                                       : which == "stabilized_swap" ? SimultaneousCase::stabilized_swap
                                                                    : SimultaneousCase::stabilizable_and_stabilized;
            r = to_report(simultaneous_conditions(c, o.order));
        } else if (compare->parsed()) {
            r = run_compare(o);
        } else if (verify->parsed()) {
            r = run_verify(o);
        } else if (compound->parsed()) {
            r = run_compound(o);
        }
        print(r, o.format);
        return 0;
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const meanexp::error &e) {
        if (o.format == "json") {
            nlohmann::ordered_json j;
            j["schema_version"] = Report::schema_version;
            j["error"] = {{"kind", e.kind()}, {"message", e.what()}};
            std::cerr << j.dump(2) << "\n";
        } else {
            std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
        }
        return 1;
    }
}

#ifndef MEANEXP_REPORT_HPP
#define MEANEXP_REPORT_HPP

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include <meanexp/analysis.hpp>
#include <meanexp/catalog.hpp>
#include <meanexp/expansion.hpp>
#include <meanexp/factor.hpp>

namespace meanexp
{

// Serializable form of every result the command line prints. All values are
// exact strings, so the JSON form round-trips without loss.
struct ReportFactor {
    std::string polynomial;
    unsigned multiplicity = 1;
    friend bool operator==(const ReportFactor &, const ReportFactor &) = default;
};

struct ReportCondition {
    long order = 0;
    std::string polynomial;
    std::string unit;
    std::vector<ReportFactor> factors;
    std::string latex;
    friend bool operator==(const ReportCondition &, const ReportCondition &) = default;
};

struct ReportSolution {
    std::map<std::string, std::string> values;
    std::string representation;
    std::string verdict;
    std::string latex;
    friend bool operator==(const ReportSolution &, const ReportSolution &) = default;
};

struct ReportResidual {
    long order = 0;
    std::string value;
    std::string at;
    friend bool operator==(const ReportResidual &, const ReportResidual &) = default;
};

struct Report {
    static constexpr int schema_version = 1;
    std::string kind;
    std::string subject;
    std::string verdict;
    std::string summary;
    std::vector<std::string> coefficients;
    std::vector<std::string> coefficients_latex;
    std::vector<ReportCondition> conditions;
    std::vector<ReportSolution> solutions;
    std::vector<ReportResidual> residuals;
    std::map<std::string, std::string> values;
    std::vector<std::string> notes;
    friend bool operator==(const Report &, const Report &) = default;
};

inline void to_json(nlohmann::ordered_json &j, const ReportFactor &f)
{
    j = {{"polynomial", f.polynomial}, {"multiplicity", f.multiplicity}};
}

inline void to_json(nlohmann::ordered_json &j, const ReportCondition &c)
{
    j = {{"order", c.order}, {"polynomial", c.polynomial}};
    if (!c.factors.empty()) {
        j["unit"] = c.unit;
        j["factors"] = c.factors;
    }
    if (!c.latex.empty()) {
        j["latex"] = c.latex;
    }
}

inline void to_json(nlohmann::ordered_json &j, const ReportSolution &s)
{
    j = nlohmann::ordered_json::object();
    for (const auto &[k, v] : s.values) {
        j[k] = v;
    }
    j["representation"] = s.representation;
    if (!s.verdict.empty()) {
        j["verdict"] = s.verdict;
    }
    if (!s.latex.empty()) {
        j["latex"] = s.latex;
    }
}

inline void to_json(nlohmann::ordered_json &j, const ReportResidual &r)
{
    j = {{"order", r.order}, {"value", r.value}};
    if (!r.at.empty()) {
        j["at"] = r.at;
    }
}

inline nlohmann::ordered_json report_to_json(const Report &r)
{
    nlohmann::ordered_json j;
    j["schema_version"] = Report::schema_version;
    auto put = [&j](const char *key, const auto &v) {
        if (!v.empty()) {
            j[key] = v;
        }
    };
    put("kind", r.kind);
    put("subject", r.subject);
    put("verdict", r.verdict);
    put("summary", r.summary);
    put("coefficients", r.coefficients);
    put("coefficients_latex", r.coefficients_latex);
    put("conditions", r.conditions);
    put("solutions", r.solutions);
    put("residuals", r.residuals);
    put("values", r.values);
    put("notes", r.notes);
    return j;
}

inline Report report_from_json(const nlohmann::ordered_json &j)
{
    if (!j.is_object() || j.value("schema_version", 0) != Report::schema_version) {
        throw ParseError("not a report document with schema_version 1");
    }
    Report r;
    r.kind = j.value("kind", "");
    r.subject = j.value("subject", "");
    r.verdict = j.value("verdict", "");
    r.summary = j.value("summary", "");
    r.coefficients = j.value("coefficients", std::vector<std::string>{});
    r.coefficients_latex = j.value("coefficients_latex", std::vector<std::string>{});
    r.values = j.value("values", std::map<std::string, std::string>{});
    r.notes = j.value("notes", std::vector<std::string>{});
    for (const auto &c : j.value("conditions", nlohmann::ordered_json::array())) {
        ReportCondition rc;
        rc.order = c.at("order").get<long>();
        rc.polynomial = c.at("polynomial").get<std::string>();
        rc.unit = c.value("unit", "");
        rc.latex = c.value("latex", "");
        for (const auto &f : c.value("factors", nlohmann::ordered_json::array())) {
            rc.factors.push_back({f.at("polynomial").get<std::string>(), f.at("multiplicity").get<unsigned>()});
        }
        r.conditions.push_back(std::move(rc));
    }
    for (const auto &s : j.value("solutions", nlohmann::ordered_json::array())) {
        ReportSolution rs;
        for (const auto &[k, v] : s.items()) {
            if (k == "representation") {
                rs.representation = v.get<std::string>();
            } else if (k == "verdict") {
                rs.verdict = v.get<std::string>();
            } else if (k == "latex") {
                rs.latex = v.get<std::string>();
            } else {
                rs.values[k] = v.get<std::string>();
            }
        }
        r.solutions.push_back(std::move(rs));
    }
    for (const auto &x : j.value("residuals", nlohmann::ordered_json::array())) {
        r.residuals.push_back({x.at("order").get<long>(), x.at("value").get<std::string>(), x.value("at", "")});
    }
    return r;
}

// Short mathematical name: P, T, NS, L, B_2, ...
inline std::string short_name(const MeanSpec &spec)
{
    switch (spec.family) {
        case Family::seiffert1:
            return "P";
        case Family::seiffert2:
            return "T";
        case Family::neuman_sandor:
            return "NS";
        case Family::logarithmic:
            return "L";
        case Family::identric:
            return "I";
        case Family::geometric:
            return "G";
        case Family::arithmetic:
            return "A";
        case Family::harmonic:
            return "H";
        case Family::heron:
            return "He";
        case Family::power:
            return "B_" + spec.params[0].to_string();
        case Family::gini:
            return "G_" + spec.params[0].to_string() + "," + spec.params[1].to_string();
        case Family::stolarsky:
            return "E_" + spec.params[0].to_string() + "," + spec.params[1].to_string();
        case Family::genlog:
            return "L_" + spec.params[0].to_string();
    }
    return spec.to_string();
}

namespace detail
{

inline ReportCondition condition_of(const ConditionEntry &e)
{
    ReportCondition c;
    c.order = static_cast<long>(e.order);
    c.polynomial = e.polynomial.to_string();
    if (e.factors) {
        c.unit = e.factors->unit.to_string();
        for (const auto &f : e.factors->factors) {
            c.factors.push_back({f.poly.to_string(), f.multiplicity});
        }
        c.latex = e.factors->to_latex();
    } else {
        c.latex = e.polynomial.to_latex();
    }
    return c;
}

inline std::string coefficient_latex(std::size_t n, const Scalar &c)
{
    std::string body = c.to_latex();
    if (!c.is_rational()) {
        const Factorization f = factor_over_q(c.poly());
        if (f.factors.size() > 1 || !f.unit.is_one()) {
            body = f.to_latex();
        }
    }
    return "a_{" + std::to_string(n) + "} = " + body;
}

inline std::string verdict_symbol(AsymVerdict v)
{
    switch (v) {
        case AsymVerdict::asym_greater:
            return "≻ 0";
        case AsymVerdict::asym_less:
            return "≺ 0";
        default:
            return "= 0 to the computed order";
    }
}

} // namespace detail

inline Report coefficients_report(const std::string &kind, const std::string &subject, const MeanCoeffs &a)
{
    Report r;
    r.kind = kind;
    r.subject = subject;
    for (std::size_t n = 0; n < a.seq.coeffs.size(); ++n) {
        r.coefficients.push_back(a[n].to_string());
        r.coefficients_latex.push_back(detail::coefficient_latex(n, a[n]));
    }
    return r;
}

inline Report to_report(const StabilityReport &s)
{
    Report r;
    r.kind = "check-stability";
    r.subject = family_name(s.family);
    r.verdict = "necessary_conditions";
    for (const auto &e : s.conditions) {
        r.conditions.push_back(detail::condition_of(e));
    }
    for (const auto &b : s.branches) {
        r.solutions.push_back({{}, b.to_string() + " = 0", "", b.to_latex() + " = 0"});
    }
    for (const auto &[v, x] : s.roots) {
        auto &list = r.values["roots_" + v];
        list += (list.empty() ? "" : ", ") + x.to_string();
    }
    r.summary = "stable members of " + r.subject + " must satisfy one of the listed factors = 0 (necessary only)";
    return r;
}

inline Report to_report(const MeanSpec &spec, const StabilityCheck &c, std::size_t order)
{
    Report r;
    r.kind = "check-stability";
    r.subject = spec.to_string();
    r.verdict = c.stable ? "stable_to_order" : "not_stable";
    r.values["order"] = std::to_string(order);
    if (c.first_failure) {
        r.values["first_failure"] = std::to_string(*c.first_failure);
    }
    r.summary = c.stable ? spec.to_string() + " matches the stable expansion up to order " + std::to_string(order)
                         : spec.to_string() + " is not stable: first mismatch at order "
                               + std::to_string(*c.first_failure);
    return r;
}

inline Report to_report(const DisproofReport &d)
{
    Report r;
    r.kind = "disprove";
    r.subject = d.target.to_string();
    r.verdict = d.verdict;
    r.values["u"] = d.u_in_v.to_string();
    r.values["defining_order"] = std::to_string(d.defining_order);
    for (const auto &e : d.conditions) {
        r.conditions.push_back(detail::condition_of(e));
    }
    for (const auto &c : d.candidates) {
        ReportSolution s;
        s.values["minimal_polynomial"] = c.minimal_polynomial.to_string("v");
        s.values["v"] = c.value_string();
        if (c.exact) {
            s.values["u"] = UPoly::from_poly(d.u_in_v, "v").eval(*c.exact).to_string();
            s.latex = "v = " + c.exact->to_latex();
        }
        s.representation = c.exact ? (c.exact->is_rational() ? "rational" : "quadratic_surd") : "numeric";
        s.verdict = c.survives ? "survives" : "contradicted at order " + std::to_string(*c.failing_order);
        r.solutions.push_back(std::move(s));
        for (const auto &[m, v] : c.residuals) {
            r.residuals.push_back({static_cast<long>(m), v, "v = " + c.value_string()});
        }
    }
    const std::string name = short_name(d.target);
    r.summary = d.verdict == "candidates_survive"
                    ? name + ": (K,M)-stabilizability with stable K, M is not excluded up to the computed order"
                    : name + " is not (K,M)-stabilizable for any stable K, M: u = " + d.u_in_v.to_string()
                          + ", every root is contradicted by a nonzero residual";
    r.notes.push_back("u = a_1^K, v = a_1^M; conditions are target minus stabilizable coefficients after eliminating u");
    return r;
}

inline Report to_report(const SubStabReport &s)
{
    Report r;
    r.kind = "substab";
    r.subject = s.target.to_string();
    r.verdict = s.verdict;
    r.values["order1"] = s.order1.to_string();
    r.values["p"] = s.p_in_q.to_string();
    if (!s.constraint.empty()) {
        r.values["constraint"] = s.constraint;
    }
    for (const auto &e : s.conditions) {
        r.conditions.push_back(detail::condition_of(e));
    }
    const std::string name = short_name(s.target);
    for (const auto &x : s.solutions) {
        ReportSolution sol;
        sol.values["p"] = x.p.to_string();
        sol.values["q"] = x.q.to_string();
        sol.representation = x.q.is_rational() ? "rational" : "quadratic_surd";
        sol.verdict = x.accepted ? to_string(x.compare.verdict) : "rejected";
        sol.latex = "(p, q) = (" + x.p.to_latex() + ", " + x.q.to_latex() + ")";
        if (x.sweep) {
            sol.values["sweep_min"] = x.sweep->min_value.to_string(12);
            sol.values["sweep_argmin"] = x.sweep->argmin.to_string(6);
            sol.values["sweep_negative_points"] = std::to_string(x.sweep->negative_points) + "/"
                                                  + std::to_string(x.sweep->points);
        }
        r.solutions.push_back(std::move(sol));
        for (const auto &[m, v] : x.residuals) {
            r.residuals.push_back({static_cast<long>(m), v.to_string(), "q = " + x.q.to_string()});
        }
    }
    if (s.verdict == "asym_greater" && !s.solutions.empty()) {
        for (const auto &x : s.solutions) {
            if (x.accepted) {
                r.summary = name + " - R(B_p," + name + ",B_q) " + detail::verdict_symbol(x.compare.verdict)
                            + " (first nonzero: " + x.compare.first_nonzero_value.to_string() + " at order "
                            + std::to_string(*x.compare.first_nonzero_index) + ")";
                break;
            }
        }
    } else if (s.verdict == "no_double_zero") {
        r.summary = name + ": no admissible double zero; p = " + s.p_in_q.to_string() + " and the next coefficient "
                    + "stays nonnegative iff " + s.constraint;
    } else {
        r.summary = name + " - R(B_p," + name + ",B_q): " + s.verdict;
    }
    r.notes.push_back("K = B_p, M = B_q; difference is target minus the (B_p,B_q)-stabilizable expansion");
    r.notes.push_back("a double zero is kept only if the difference is nonnegative on the (s,1-s) sweep");
    return r;
}

inline Report to_report(const SimultaneousReport &s)
{
    Report r;
    r.kind = "simultaneous";
    r.subject = to_string(s.which);
    r.verdict = "necessary_conditions";
    for (const auto &e : s.conditions) {
        if (!e.polynomial.is_zero()) {
            r.conditions.push_back(detail::condition_of(e));
        }
    }
    for (const auto &b : s.branches) {
        ReportSolution sol;
        sol.values["branch"] = b.solved;
        std::string coeffs;
        for (std::size_t n = 0; n < b.coefficients.size(); ++n) {
            coeffs += (n ? ", " : "") + b.coefficients[n].to_string();
        }
        sol.values["coefficients_" + s.subject] = coeffs;
        sol.values["stable_form"] = b.stable_form ? "true" : "false";
        sol.values["remaining_conditions"] = std::to_string(b.remaining.size());
        sol.representation = b.factor.to_string() + " = 0";
        sol.latex = b.factor.to_latex() + " = 0";
        r.solutions.push_back(std::move(sol));
    }
    return r;
}

inline Report compare_report(const std::string &lhs, const std::string &rhs, const AsymCompareResult &c)
{
    Report r;
    r.kind = "compare";
    r.subject = lhs + " - " + rhs;
    r.verdict = to_string(c.verdict);
    if (c.first_nonzero_index) {
        r.values["first_nonzero_index"] = std::to_string(*c.first_nonzero_index);
        r.values["first_nonzero_value"] = c.first_nonzero_value.to_string();
        r.summary = r.subject + " " + detail::verdict_symbol(c.verdict) + " (first nonzero: "
                    + c.first_nonzero_value.to_string() + " at order " + std::to_string(*c.first_nonzero_index) + ")";
    } else {
        r.summary = r.subject + " " + detail::verdict_symbol(c.verdict);
    }
    return r;
}

inline std::string render_text(const Report &r)
{
    std::ostringstream os;
    const bool only_coefficients = r.conditions.empty() && r.solutions.empty() && r.residuals.empty()
                                   && r.values.empty() && r.summary.empty();
    if (only_coefficients && !r.coefficients.empty()) {
        bool plain = true;
        for (const auto &c : r.coefficients) {
            plain = plain && c.find_first_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos;
        }
        if (plain) {
            for (std::size_t n = 0; n < r.coefficients.size(); ++n) {
                os << (n ? ", " : "") << r.coefficients[n];
            }
            os << "\n";
        } else {
            for (std::size_t n = 0; n < r.coefficients.size(); ++n) {
                os << "a" << n << " = " << r.coefficients[n] << "\n";
            }
        }
        return os.str();
    }
    if (!r.summary.empty()) {
        os << r.summary << "\n";
    }
    if (!r.verdict.empty()) {
        os << "verdict: " << r.verdict << "\n";
    }
    for (std::size_t n = 0; n < r.coefficients.size(); ++n) {
        os << "a" << n << " = " << r.coefficients[n] << "\n";
    }
    for (const auto &[k, v] : r.values) {
        os << k << ": " << v << "\n";
    }
    if (!r.conditions.empty()) {
        os << "conditions:\n";
        for (const auto &c : r.conditions) {
            os << "  order " << c.order << ": " << c.polynomial << "\n";
            if (!c.factors.empty()) {
                os << "    = " << c.unit;
                for (const auto &f : c.factors) {
                    os << " * (" << f.polynomial << ")" << (f.multiplicity > 1 ? "^" + std::to_string(f.multiplicity) : "");
                }
                os << "\n";
            }
        }
    }
    if (!r.solutions.empty()) {
        os << "solutions:\n";
        for (const auto &s : r.solutions) {
            os << "  " << s.representation;
            for (const auto &[k, v] : s.values) {
                os << "; " << k << " = " << v;
            }
            if (!s.verdict.empty()) {
                os << " [" << s.verdict << "]";
            }
            os << "\n";
        }
    }
    if (!r.residuals.empty()) {
        os << "residuals:\n";
        for (const auto &x : r.residuals) {
            os << "  order " << x.order << ": " << x.value << (x.at.empty() ? "" : "  (" + x.at + ")") << "\n";
        }
    }
    for (const auto &n : r.notes) {
        os << "note: " << n << "\n";
    }
    return os.str();
}

// Plain math fragments, one per line.
inline std::string render_latex(const Report &r)
{
    std::ostringstream os;
    for (const auto &c : r.coefficients_latex) {
        os << c << "\n";
    }
    for (const auto &c : r.conditions) {
        os << "C_{" << c.order << "} = " << c.latex << "\n";
    }
    for (const auto &s : r.solutions) {
        if (!s.latex.empty()) {
            os << s.latex << "\n";
        }
    }
    return os.str();
}

inline std::string render_json(const Report &r)
{
    return report_to_json(r).dump(2) + "\n";
}

} // namespace meanexp

#endif

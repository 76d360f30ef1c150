#ifndef MEANEXP_POLY_HPP
#define MEANEXP_POLY_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <meanexp/error.hpp>
#include <meanexp/rational.hpp>

namespace meanexp
{

using Monomial = std::vector<std::uint32_t>;

namespace detail
{

inline std::uint32_t total_degree(const Monomial &m)
{
    return std::accumulate(m.begin(), m.end(), std::uint32_t(0));
}

// Graded lexicographic order, largest first. Lex ties are broken by the
// declared variable order.
struct grlex_desc {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        const auto da = total_degree(a), db = total_degree(b);
        if (da != db) {
            return da > db;
        }
        return a > b;
    }
};

} // namespace detail

// Sparse multivariate polynomial over the rationals. Variables are named;
// binary operations work over the union of both operands' variables.
// Variables that no longer occur in any term are dropped, so a polynomial
// without variables is exactly a constant.
class Poly
{
public:
    using term_map = std::map<Monomial, Rational, detail::grlex_desc>;

    Poly() = default;
    Poly(const Rational &c)
    {
        if (!c.is_zero()) {
            m_terms.emplace(Monomial{}, c);
        }
    }
    Poly(int c) : Poly(Rational(c)) {}

    static Poly variable(const std::string &name)
    {
        Poly p;
        p.m_vars = {name};
        p.m_terms.emplace(Monomial{1}, Rational(1));
        return p;
    }

    // Parses the textual form produced by to_string(), and more generally any
    // expression built from integers, identifiers, + - * / ^ and parentheses,
    // where divisors and exponents are constants.
    static Poly parse(std::string_view text);

    const std::vector<std::string> &variables() const noexcept
    {
        return m_vars;
    }
    const term_map &terms() const noexcept
    {
        return m_terms;
    }

    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    bool is_constant() const noexcept
    {
        return m_vars.empty();
    }
    Rational constant_value() const
    {
        if (!is_constant()) {
            throw SymbolicCoefficient("polynomial " + to_string() + " is not a constant");
        }
        return m_terms.empty() ? Rational(0) : m_terms.begin()->second;
    }
    // Coefficient of the constant monomial.
    Rational constant_term() const
    {
        const auto it = m_terms.find(Monomial(m_vars.size(), 0));
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    bool has_variable(const std::string &name) const
    {
        return std::find(m_vars.begin(), m_vars.end(), name) != m_vars.end();
    }

    std::uint32_t degree() const
    {
        std::uint32_t d = 0;
        for (const auto &[m, c] : m_terms) {
            d = std::max(d, detail::total_degree(m));
        }
        return d;
    }
    std::uint32_t degree_in(const std::string &name) const
    {
        const auto idx = index_of(name);
        if (idx == npos) {
            return 0;
        }
        std::uint32_t d = 0;
        for (const auto &[m, c] : m_terms) {
            d = std::max(d, m[idx]);
        }
        return d;
    }

    // Coefficients of this polynomial viewed as univariate in `name`;
    // entry k multiplies name^k.
    std::vector<Poly> coefficients_in(const std::string &name) const
    {
        const auto idx = index_of(name);
        if (idx == npos) {
            return {*this};
        }
        std::vector<Poly> out(degree_in(name) + 1u);
        std::vector<std::string> rest = m_vars;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
        for (auto &o : out) {
            o.m_vars = rest;
        }
        for (const auto &[m, c] : m_terms) {
            Monomial r = m;
            r.erase(r.begin() + static_cast<std::ptrdiff_t>(idx));
            out[m[idx]].m_terms.emplace(std::move(r), c);
        }
        for (auto &o : out) {
            o.prune();
        }
        return out;
    }

    Rational eval(const std::map<std::string, Rational> &assignment) const
    {
        std::vector<const Rational *> vals;
        for (const auto &v : m_vars) {
            const auto it = assignment.find(v);
            if (it == assignment.end()) {
                throw MissingVariable("no value assigned to variable '" + v + "'");
            }
            vals.push_back(&it->second);
        }
        Rational acc(0);
        for (const auto &[m, c] : m_terms) {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] != 0) {
                    t *= vals[i]->pow(m[i]);
                }
            }
            acc += t;
        }
        return acc;
    }

    // Replaces `name` with `value` everywhere.
    Poly substitute(const std::string &name, const Poly &value) const
    {
        if (!has_variable(name)) {
            return *this;
        }
        const auto coeffs = coefficients_in(name);
        Poly acc;
        for (auto k = coeffs.size(); k-- > 0;) {
            acc = acc * value + coeffs[k];
        }
        return acc;
    }

    Poly operator-() const
    {
        Poly r = *this;
        for (auto &[m, c] : r.m_terms) {
            c = -c;
        }
        return r;
    }

    friend Poly operator+(const Poly &a, const Poly &b)
    {
        return combine(a, b, false);
    }
    friend Poly operator-(const Poly &a, const Poly &b)
    {
        return combine(a, b, true);
    }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return Poly{};
        }
        if (a.is_constant()) {
            return b.scaled(a.constant_value());
        }
        if (b.is_constant()) {
            return a.scaled(b.constant_value());
        }
        const auto vars = merged_vars(a.m_vars, b.m_vars);
        const auto ta = a.aligned_terms(vars), tb = b.aligned_terms(vars);
        Poly r;
        r.m_vars = vars;
        Monomial buf(vars.size());
        for (const auto &[ma, ca] : ta) {
            for (const auto &[mb, cb] : tb) {
                for (std::size_t i = 0; i < buf.size(); ++i) {
                    buf[i] = ma[i] + mb[i];
                }
                auto [it, inserted] = r.m_terms.try_emplace(buf, ca);
                if (inserted) {
                    it->second *= cb;
                } else {
                    it->second += ca * cb;
                }
            }
        }
        r.prune();
        return r;
    }

    Poly &operator+=(const Poly &o)
    {
        return *this = *this + o;
    }
    Poly &operator-=(const Poly &o)
    {
        return *this = *this - o;
    }
    Poly &operator*=(const Poly &o)
    {
        return *this = *this * o;
    }

    Poly scaled(const Rational &f) const
    {
        if (f.is_zero()) {
            return Poly{};
        }
        Poly r = *this;
        for (auto &[m, c] : r.m_terms) {
            c *= f;
        }
        return r;
    }

    Poly divided_by(const Rational &d) const
    {
        if (d.is_zero()) {
            throw DivisionByZero("division of polynomial " + to_string() + " by zero");
        }
        return scaled(Rational(1) / d);
    }

    Poly pow(unsigned e) const
    {
        Poly acc(1), base = *this;
        while (e != 0u) {
            if (e & 1u) {
                acc *= base;
            }
            e >>= 1u;
            if (e != 0u) {
                base *= base;
            }
        }
        return acc;
    }

    // Exact quotient p / q. Throws InexactDivision when q does not divide p.
    Poly exact_divide(const Poly &q) const;

    // Leading term under graded lex with respect to this polynomial's own
    // variable order.
    std::pair<Monomial, Rational> leading_term() const
    {
        if (is_zero()) {
            return {Monomial(m_vars.size(), 0), Rational(0)};
        }
        return *m_terms.begin();
    }

    friend bool operator==(const Poly &a, const Poly &b)
    {
        if (a.m_vars == b.m_vars) {
            return a.m_terms == b.m_terms;
        }
        return (a - b).is_zero();
    }

    std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            const bool neg = c.sign() < 0;
            const Rational a = c.abs();
            if (first) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            const std::string mono = monomial_string(m, "*", "^");
            if (mono.empty()) {
                out += a.to_string();
            } else if (a.is_one()) {
                out += mono;
            } else {
                out += a.to_string() + "*" + mono;
            }
        }
        return out;
    }

    // LaTeX fragment; identifiers like a1K render as a_1^K.
    std::string to_latex() const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            const bool neg = c.sign() < 0;
            const Rational a = c.abs();
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) {
                    continue;
                }
                std::string v = latex_identifier(m_vars[i]);
                if (m[i] > 1) {
                    v = (v.find('^') != std::string::npos ? "(" + v + ")" : v) + "^{" + std::to_string(m[i]) + "}";
                }
                mono += (mono.empty() ? "" : " ") + v;
            }
            if (mono.empty()) {
                out += latex_rational(a);
            } else if (a.is_one()) {
                out += mono;
            } else {
                out += latex_rational(a) + " " + mono;
            }
        }
        return out;
    }

    static std::string latex_rational(const Rational &a)
    {
        if (a.is_integer()) {
            return a.to_string();
        }
        const std::string frac = "\\tfrac{" + mpz_class(abs(a.numerator())).get_str() + "}{" + a.denominator().get_str() + "}";
        return a.sign() < 0 ? "-" + frac : frac;
    }

    static std::string latex_identifier(const std::string &name)
    {
        // letters, then digits, then optional trailing letters: a1K -> a_1^K
        std::size_t i = 0;
        while (i < name.size() && std::isalpha(static_cast<unsigned char>(name[i])) != 0) {
            ++i;
        }
        std::size_t j = i;
        while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j])) != 0) {
            ++j;
        }
        if (i == 0 || j == i) {
            return name;
        }
        std::string out = name.substr(0, i) + "_{" + name.substr(i, j - i) + "}";
        if (j < name.size()) {
            out += "^{" + name.substr(j) + "}";
        }
        return out;
    }

    friend std::ostream &operator<<(std::ostream &os, const Poly &p)
    {
        return os << p.to_string();
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t index_of(const std::string &name) const
    {
        const auto it = std::find(m_vars.begin(), m_vars.end(), name);
        return it == m_vars.end() ? npos : static_cast<std::size_t>(it - m_vars.begin());
    }

    std::string monomial_string(const Monomial &m, const char *mul, const char *pw) const
    {
        std::string out;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += mul;
            }
            out += m_vars[i];
            if (m[i] > 1) {
                out += pw + std::to_string(m[i]);
            }
        }
        return out;
    }

    static std::vector<std::string> merged_vars(const std::vector<std::string> &a, const std::vector<std::string> &b)
    {
        std::vector<std::string> out = a;
        for (const auto &v : b) {
            if (std::find(out.begin(), out.end(), v) == out.end()) {
                out.push_back(v);
            }
        }
        return out;
    }

    term_map aligned_terms(const std::vector<std::string> &vars) const
    {
        if (vars == m_vars) {
            return m_terms;
        }
        std::vector<std::size_t> pos(m_vars.size());
        for (std::size_t i = 0; i < m_vars.size(); ++i) {
            pos[i] = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), m_vars[i]) - vars.begin());
        }
        term_map out;
        for (const auto &[m, c] : m_terms) {
            Monomial r(vars.size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) {
                r[pos[i]] = m[i];
            }
            out.emplace(std::move(r), c);
        }
        return out;
    }

    static Poly combine(const Poly &a, const Poly &b, bool subtract)
    {
        if (b.is_zero()) {
            return a;
        }
        Poly r;
        r.m_vars = merged_vars(a.m_vars, b.m_vars);
        r.m_terms = a.aligned_terms(r.m_vars);
        for (auto &[m, c] : b.aligned_terms(r.m_vars)) {
            auto [it, inserted] = r.m_terms.try_emplace(m, subtract ? -c : c);
            if (!inserted) {
                if (subtract) {
                    it->second -= c;
                } else {
                    it->second += c;
                }
            }
        }
        r.prune();
        return r;
    }

    // Removes zero terms and variables that no longer occur.
    void prune()
    {
        for (auto it = m_terms.begin(); it != m_terms.end();) {
            it = it->second.is_zero() ? m_terms.erase(it) : std::next(it);
        }
        std::vector<bool> used(m_vars.size(), false);
        for (const auto &[m, c] : m_terms) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                used[i] = used[i] || m[i] != 0;
            }
        }
        if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) {
            return;
        }
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < m_vars.size(); ++i) {
            if (used[i]) {
                vars.push_back(m_vars[i]);
            }
        }
        term_map terms;
        for (const auto &[m, c] : m_terms) {
            Monomial r;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (used[i]) {
                    r.push_back(m[i]);
                }
            }
            terms.emplace(std::move(r), c);
        }
        m_vars = std::move(vars);
        m_terms = std::move(terms);
    }

    std::vector<std::string> m_vars;
    term_map m_terms;
};

inline Poly Poly::exact_divide(const Poly &q) const
{
    if (q.is_zero()) {
        throw DivisionByZero("exact division of " + to_string() + " by the zero polynomial");
    }
    if (q.is_constant()) {
        return divided_by(q.constant_value());
    }
    const auto vars = merged_vars(m_vars, q.m_vars);
    Poly rem;
    rem.m_vars = vars;
    rem.m_terms = aligned_terms(vars);
    Poly div;
    div.m_vars = vars;
    div.m_terms = q.aligned_terms(vars);
    const auto [lm_q, lc_q] = *div.m_terms.begin();
    Poly quot;
    quot.m_vars = vars;
    while (!rem.m_terms.empty()) {
        const auto [lm, lc] = *rem.m_terms.begin();
        Monomial qm(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (lm[i] < lm_q[i]) {
                throw InexactDivision("(" + to_string() + ") is not divisible by (" + q.to_string() + ")");
            }
            qm[i] = lm[i] - lm_q[i];
        }
        const Rational c = lc / lc_q;
        quot.m_terms.emplace(qm, c);
        for (const auto &[m, d] : div.m_terms) {
            Monomial mm(vars.size());
            for (std::size_t i = 0; i < vars.size(); ++i) {
                mm[i] = m[i] + qm[i];
            }
            auto [it, inserted] = rem.m_terms.try_emplace(mm, -(c * d));
            if (!inserted) {
                it->second -= c * d;
                if (it->second.is_zero()) {
                    rem.m_terms.erase(it);
                }
            }
        }
    }
    quot.prune();
    return quot;
}

namespace detail
{

class poly_parser
{
public:
    explicit poly_parser(std::string_view s) : m_s(s) {}

    Poly parse()
    {
        Poly p = expr();
        skip();
        if (m_i != m_s.size()) {
            fail("unexpected character");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &why) const
    {
        throw ParseError(why + " at position " + std::to_string(m_i) + " in '" + std::string(m_s) + "'");
    }
    void skip()
    {
        while (m_i < m_s.size() && std::isspace(static_cast<unsigned char>(m_s[m_i])) != 0) {
            ++m_i;
        }
    }
    bool eat(char c)
    {
        skip();
        if (m_i < m_s.size() && m_s[m_i] == c) {
            ++m_i;
            return true;
        }
        return false;
    }
    Poly expr()
    {
        skip();
        Poly acc;
        bool neg = false;
        if (eat('-')) {
            neg = true;
        } else {
            eat('+');
        }
        acc = term();
        if (neg) {
            acc = -acc;
        }
        while (true) {
            if (eat('+')) {
                acc += term();
            } else if (eat('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }
    Poly term()
    {
        Poly acc = factor();
        while (true) {
            if (eat('*')) {
                acc *= factor();
            } else if (eat('/')) {
                const Poly d = factor();
                if (!d.is_constant()) {
                    fail("division by a non-constant");
                }
                acc = acc.divided_by(d.constant_value());
            } else {
                return acc;
            }
        }
    }
    Poly factor()
    {
        Poly base = atom();
        if (eat('^')) {
            skip();
            const auto start = m_i;
            while (m_i < m_s.size() && std::isdigit(static_cast<unsigned char>(m_s[m_i])) != 0) {
                ++m_i;
            }
            if (start == m_i) {
                fail("expected a non-negative integer exponent");
            }
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(m_s.substr(start, m_i - start)))));
        }
        return base;
    }
    Poly atom()
    {
        skip();
        if (m_i >= m_s.size()) {
            fail("unexpected end of input");
        }
        const char c = m_s[m_i];
        if (c == '(') {
            ++m_i;
            Poly p = expr();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return p;
        }
        if (c == '-') {
            ++m_i;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            const auto start = m_i;
            while (m_i < m_s.size() && std::isdigit(static_cast<unsigned char>(m_s[m_i])) != 0) {
                ++m_i;
            }
            return Poly(Rational(mpz_class(std::string(m_s.substr(start, m_i - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
            const auto start = m_i;
            while (m_i < m_s.size()
                   && (std::isalnum(static_cast<unsigned char>(m_s[m_i])) != 0 || m_s[m_i] == '_')) {
                ++m_i;
            }
            return Poly::variable(std::string(m_s.substr(start, m_i - start)));
        }
        fail("unexpected character");
    }

    std::string_view m_s;
    std::size_t m_i = 0;
};

} // namespace detail

inline Poly Poly::parse(std::string_view text)
{
    return detail::poly_parser(text).parse();
}

} // namespace meanexp

#endif

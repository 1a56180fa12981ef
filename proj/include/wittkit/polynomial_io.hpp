#ifndef WITTKIT_POLYNOMIAL_IO_HPP
#define WITTKIT_POLYNOMIAL_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <wittkit/errors.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>

namespace wittkit
{

// Text grammar (see docs/formats.md):
//   terms in ascending total degree, ties broken by ascending exponent vector;
//   a term is COEFF, MONO, -MONO or COEFF*MONO; MONO is var or var^e joined by '*'.
//   Example: 1+4*x^3, -75000*x^5, 1/2*t^2.
template <typename R>
std::string to_text(const Polynomial<R> &p)
{
    if (p.is_zero()) {
        return "0";
    }
    using entry = std::pair<const typename Polynomial<R>::exponent_type *, const R *>;
    std::vector<entry> order;
    order.reserve(p.size());
    for (const auto &[e, c] : p.terms()) {
        order.emplace_back(&e, &c);
    }
    auto degree = [](const auto &e) { return std::accumulate(e.begin(), e.end(), std::uint64_t{0}); };
    std::stable_sort(order.begin(), order.end(),
                     [&](const entry &a, const entry &b) { return degree(*a.first) < degree(*b.first); });

    std::string out;
    bool first = true;
    for (const auto &[ep, cp] : order) {
        const auto &e = *ep;
        const R &c = *cp;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += '*';
            }
            mono += p.variables()[i];
            if (e[i] != 1) {
                mono += '^' + std::to_string(e[i]);
            }
        }
        std::string term;
        if (mono.empty()) {
            term = to_string(c);
        } else if (c == 1) {
            term = mono;
        } else if (c == -1) {
            term = "-" + mono;
        } else {
            term = to_string(c) + "*" + mono;
        }
        if (!first && term.front() != '-') {
            out += '+';
        }
        out += term;
        first = false;
    }
    return out;
}

namespace detail
{

template <typename R>
class poly_parser
{
public:
    explicit poly_parser(std::string_view s) : m_s(s) {}

    Polynomial<R> parse()
    {
        auto p = expr();
        skip_ws();
        if (m_pos != m_s.size()) {
            fail("unexpected character");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &why) const
    {
        throw malformed_input("polynomial parse error at offset " + std::to_string(m_pos) + ": " + why
                              + " in '" + std::string(m_s) + "'");
    }

    void skip_ws()
    {
        while (m_pos < m_s.size() && std::isspace(static_cast<unsigned char>(m_s[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (m_pos < m_s.size() && m_s[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    Polynomial<R> expr()
    {
        bool neg = false;
        if (accept('-')) {
            neg = true;
        } else {
            accept('+');
        }
        Polynomial<R> acc = term();
        if (neg) {
            acc = -acc;
        }
        while (true) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial<R> term()
    {
        Polynomial<R> acc = factor();
        while (accept('*')) {
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial<R> factor()
    {
        Polynomial<R> base = primary();
        if (accept('^')) {
            skip_ws();
            const auto digits = read_digits();
            if (digits.empty()) {
                fail("expected exponent");
            }
            base = base.pow(std::stoul(digits));
        }
        return base;
    }

    std::string read_digits()
    {
        const auto start = m_pos;
        while (m_pos < m_s.size() && std::isdigit(static_cast<unsigned char>(m_s[m_pos]))) {
            ++m_pos;
        }
        return std::string(m_s.substr(start, m_pos - start));
    }

    Polynomial<R> primary()
    {
        skip_ws();
        if (m_pos >= m_s.size()) {
            fail("unexpected end of input");
        }
        const char c = m_s[m_pos];
        if (c == '(') {
            ++m_pos;
            auto inner = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num = parse_integer(read_digits());
            skip_ws();
            if (m_pos < m_s.size() && m_s[m_pos] == '/') {
                ++m_pos;
                skip_ws();
                const auto d = read_digits();
                if (d.empty()) {
                    fail("expected denominator");
                }
                const Rational q = make_rational(num, parse_integer(d));
                if constexpr (std::is_same_v<R, Integer>) {
                    if (q.get_den() != 1) {
                        fail("non-integral coefficient");
                    }
                    return Polynomial<R>(Integer(q.get_num()));
                } else {
                    return Polynomial<R>(R(q));
                }
            }
            return Polynomial<R>(R(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const auto start = m_pos;
            while (m_pos < m_s.size()
                   && (std::isalnum(static_cast<unsigned char>(m_s[m_pos])) || m_s[m_pos] == '_')) {
                ++m_pos;
            }
            return Polynomial<R>::variable(std::string(m_s.substr(start, m_pos - start)));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view m_s;
    std::size_t m_pos = 0;
};

} // namespace detail

/// Parse the text grammar. With an explicit variable list the result is
/// expressed over exactly that list; otherwise variables appear in order of
/// first use.
template <typename R>
Polynomial<R> parse_polynomial(std::string_view text, const std::vector<std::string> &vars = {})
{
    auto p = detail::poly_parser<R>(text).parse();
    if (!vars.empty()) {
        return p.with_variables(vars);
    }
    return p;
}

} // namespace wittkit

#endif

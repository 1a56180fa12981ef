#ifndef WITTKIT_PICARD_FUCHS_HPP
#define WITTKIT_PICARD_FUCHS_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <wittkit/errors.hpp>
#include <wittkit/fgl.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>
#include <wittkit/polynomial_io.hpp>
#include <wittkit/series.hpp>

namespace wittkit
{

/// Differential operator sum_k q_k(x) theta^k, theta = x d/dx, q_k in Z[x].
class ThetaOperator
{
public:
    ThetaOperator() : m_q{IntPolynomial(std::vector<std::string>{"x"})} {}

    explicit ThetaOperator(std::vector<IntPolynomial> q) : m_q(std::move(q))
    {
        for (auto &c : m_q) {
            c = c.with_variables({"x"});
        }
        normalize();
    }

    static ThetaOperator constant(const Integer &c)
    {
        return ThetaOperator({IntPolynomial(c)});
    }

    static ThetaOperator theta()
    {
        return ThetaOperator({IntPolynomial(0), IntPolynomial(1)});
    }

    // Multiplication by the function x^n.
    static ThetaOperator x_power(std::uint32_t n)
    {
        return ThetaOperator({IntPolynomial::monomial({"x"}, {n}, Integer(1))});
    }

    std::size_t order() const noexcept
    {
        return m_q.size() - 1;
    }
    const std::vector<IntPolynomial> &coefficients() const noexcept
    {
        return m_q;
    }
    IntPolynomial coefficient(std::size_t k) const
    {
        return k < m_q.size() ? m_q[k] : IntPolynomial(std::vector<std::string>{"x"});
    }
    bool is_zero() const
    {
        return m_q.size() == 1 && m_q[0].is_zero();
    }

    // Replace theta by theta + n, i.e. x^{-n} L x^n.
    ThetaOperator shifted(const Integer &n) const
    {
        std::vector<IntPolynomial> out(m_q.size(), IntPolynomial(std::vector<std::string>{"x"}));
        for (std::size_t k = 0; k < m_q.size(); ++k) {
            // (theta + n)^k = sum_i C(k,i) n^{k-i} theta^i
            for (std::size_t i = 0; i <= k; ++i) {
                const Integer c = binomial(k, i) * ipow(n, k - i);
                out[i] += m_q[k] * IntPolynomial(c);
            }
        }
        return ThetaOperator(std::move(out));
    }

    friend ThetaOperator operator+(const ThetaOperator &a, const ThetaOperator &b)
    {
        std::vector<IntPolynomial> out(std::max(a.m_q.size(), b.m_q.size()), IntPolynomial(std::vector<std::string>{"x"}));
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] = a.coefficient(k) + b.coefficient(k);
        }
        return ThetaOperator(std::move(out));
    }

    friend ThetaOperator operator-(const ThetaOperator &a)
    {
        std::vector<IntPolynomial> out;
        for (const auto &c : a.m_q) {
            out.push_back(-c);
        }
        return ThetaOperator(std::move(out));
    }

    friend ThetaOperator operator-(const ThetaOperator &a, const ThetaOperator &b)
    {
        return a + (-b);
    }

    /// Composition, normalized with theta x^n = x^n (theta + n).
    friend ThetaOperator operator*(const ThetaOperator &a, const ThetaOperator &b)
    {
        ThetaOperator acc({IntPolynomial(0)});
        for (std::size_t k = 0; k < b.m_q.size(); ++k) {
            for (const auto &[e, c] : b.m_q[k].terms()) {
                // a * (c x^n theta^k) = x^n a(theta + n) c theta^k
                const std::uint32_t n = e[0];
                const auto sh = a.shifted(Integer(n));
                std::vector<IntPolynomial> out(sh.m_q.size() + k, IntPolynomial(std::vector<std::string>{"x"}));
                const auto xn = IntPolynomial::monomial({"x"}, {n}, c);
                for (std::size_t j = 0; j < sh.m_q.size(); ++j) {
                    out[j + k] = sh.m_q[j] * xn;
                }
                acc = acc + ThetaOperator(std::move(out));
            }
        }
        return acc;
    }

    friend bool operator==(const ThetaOperator &a, const ThetaOperator &b)
    {
        return a.m_q == b.m_q;
    }

private:
    void normalize()
    {
        while (m_q.size() > 1 && m_q.back().is_zero()) {
            m_q.pop_back();
        }
        if (m_q.empty()) {
            m_q.push_back(IntPolynomial(std::vector<std::string>{"x"}));
        }
    }

    std::vector<IntPolynomial> m_q;
};

/// One summand coeff * x^x_power * theta^theta_power * prod (theta + shift).
struct OperatorTerm {
    Integer coeff;
    std::uint32_t x_power = 0;
    std::uint32_t theta_power = 0;
    std::vector<Integer> shifts;
};

inline ThetaOperator expand_operator(const std::vector<OperatorTerm> &terms)
{
    if (terms.empty()) {
        throw malformed_input("operator has no terms");
    }
    ThetaOperator sum({IntPolynomial(0)});
    for (const auto &t : terms) {
        ThetaOperator term = ThetaOperator::constant(t.coeff) * ThetaOperator::x_power(t.x_power);
        for (std::uint32_t i = 0; i < t.theta_power; ++i) {
            term = term * ThetaOperator::theta();
        }
        for (const auto &c : t.shifts) {
            term = term * (ThetaOperator::theta() + ThetaOperator::constant(c));
        }
        sum = sum + term;
    }
    return sum;
}

namespace detail
{

// Same grammar as polynomials, with the extra atom "theta" and a
// non-commutative product read left to right.
class operator_parser
{
public:
    explicit operator_parser(std::string_view s) : m_s(s) {}

    ThetaOperator parse()
    {
        auto op = expr();
        skip_ws();
        if (m_pos != m_s.size()) {
            fail("unexpected trailing input");
        }
        return op;
    }

private:
    [[noreturn]] void fail(const std::string &why) const
    {
        throw malformed_input("operator parse error at offset " + std::to_string(m_pos) + ": " + why + " in '"
                              + std::string(m_s) + "'");
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

    ThetaOperator expr()
    {
        bool neg = accept('-');
        if (!neg) {
            accept('+');
        }
        ThetaOperator acc = term();
        if (neg) {
            acc = -acc;
        }
        while (true) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    ThetaOperator term()
    {
        ThetaOperator acc = factor();
        while (accept('*')) {
            acc = acc * factor();
        }
        return acc;
    }

    std::string digits()
    {
        skip_ws();
        const auto start = m_pos;
        while (m_pos < m_s.size() && std::isdigit(static_cast<unsigned char>(m_s[m_pos]))) {
            ++m_pos;
        }
        return std::string(m_s.substr(start, m_pos - start));
    }

    ThetaOperator factor()
    {
        ThetaOperator base = primary();
        if (accept('^')) {
            const auto d = digits();
            if (d.empty()) {
                fail("expected exponent");
            }
            const auto n = std::stoul(d);
            ThetaOperator r = ThetaOperator::constant(1);
            for (unsigned long i = 0; i < n; ++i) {
                r = r * base;
            }
            base = r;
        }
        return base;
    }

    ThetaOperator primary()
    {
        skip_ws();
        if (m_pos >= m_s.size()) {
            fail("unexpected end of input");
        }
        if (accept('(')) {
            auto inner = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(m_s[m_pos]))) {
            return ThetaOperator::constant(parse_integer(digits()));
        }
        const auto start = m_pos;
        while (m_pos < m_s.size() && std::isalpha(static_cast<unsigned char>(m_s[m_pos]))) {
            ++m_pos;
        }
        const auto word = m_s.substr(start, m_pos - start);
        if (word == "theta") {
            return ThetaOperator::theta();
        }
        if (word == "x") {
            return ThetaOperator::x_power(1);
        }
        m_pos = start;
        fail("expected a number, x, theta or '('");
    }

    std::string_view m_s;
    std::size_t m_pos = 0;
};

} // namespace detail

/// Parse e.g. "theta^4 - 5^5*x^5*(theta+1)*(theta+2)*(theta+3)*(theta+4)".
inline ThetaOperator parse_operator(std::string_view text)
{
    return detail::operator_parser(text).parse();
}

inline std::string to_text(const ThetaOperator &L)
{
    std::string out;
    for (std::size_t k = L.order() + 1; k-- > 0;) {
        const auto &q = L.coefficients()[k];
        if (q.is_zero()) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        out += "(" + to_text(q) + ")";
        if (k > 0) {
            out += "*theta";
            if (k > 1) {
                out += "^" + std::to_string(k);
            }
        }
    }
    return out.empty() ? "0" : out;
}

/// theta^4 - 5^5 x^5 (theta+1)(theta+2)(theta+3)(theta+4)
inline ThetaOperator quintic_picard_fuchs()
{
    return expand_operator({{Integer(1), 0, 4, {}}, {Integer(-3125), 5, 0, {1, 2, 3, 4}}});
}

/// f(x) = sum_j (5j)! / (j!)^5 x^{5j} through degree T.
inline TruncatedSeries<Integer> quintic_period_series(std::size_t T)
{
    TruncatedSeries<Integer> f("x", T);
    for (unsigned long j = 0; 5 * j <= T; ++j) {
        f.set(5 * j, factorial(5 * j) / ipow(factorial(j), 5));
    }
    return f;
}

/// L applied to a polynomial in x, using theta(x^n) = n x^n.
inline IntPolynomial apply_operator(const ThetaOperator &L, const IntPolynomial &f)
{
    const std::vector<std::string> px{"x"};
    const auto g = f.with_variables(px);
    IntPolynomial out(px);
    for (const auto &[e, c] : g.terms()) {
        const Integer n(e[0]);
        IntPolynomial eig(px);
        for (std::size_t k = 0; k <= L.order(); ++k) {
            eig += L.coefficients()[k] * IntPolynomial(Integer(c * ipow(n, k)));
        }
        out += eig * IntPolynomial::monomial(px, {e[0]}, Integer(1));
    }
    return out;
}

/// L applied to a series in x. q_k(x) only raise degrees, so the result is
/// known through the same order.
template <typename R>
TruncatedSeries<R> apply_operator(const ThetaOperator &L, const TruncatedSeries<R> &f)
{
    const std::size_t T = f.order();
    TruncatedSeries<R> out(f.variable(), T);
    std::vector<R> acc(T + 1, R(0));
    for (std::size_t n = 0; n <= T; ++n) {
        const R &fn = f[n];
        if (is_zero(fn)) {
            continue;
        }
        for (std::size_t k = 0; k <= L.order(); ++k) {
            const Integer eig = ipow(Integer(static_cast<unsigned long>(n)), k);
            for (const auto &[e, c] : L.coefficients()[k].terms()) {
                const std::size_t d = n + e[0];
                if (d <= T) {
                    acc[d] += R(c * eig) * fn;
                }
            }
        }
    }
    return TruncatedSeries<R>(f.variable(), std::move(acc));
}

struct PFCheckRow {
    std::size_t k;
    bool pass;
    // L(a_k) with coefficients reduced into [0, k); zero on pass
    IntPolynomial residual;
};

/// L(a_k) == 0 mod k Z[x] for k = 1..k_max.
inline std::vector<PFCheckRow> pf_congruence_check(const ThetaOperator &L, const Logarithm &log, std::size_t k_max)
{
    if (k_max > log.truncation()) {
        throw insufficient_truncation("k_max = " + std::to_string(k_max) + " exceeds the logarithm truncation M = "
                                      + std::to_string(log.truncation()));
    }
    std::vector<PFCheckRow> rows;
    rows.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const auto r = poly_reduce_mod(apply_operator(L, log.coeff(k)), Integer(static_cast<unsigned long>(k)));
        rows.push_back({k, r.is_zero(), r});
    }
    return rows;
}

struct SeriesCheckResult {
    bool pass;
    // lowest degree with a nonzero coefficient of L f, if any
    std::optional<std::size_t> first_failure;
    TruncatedSeries<Integer> residual;
};

/// L f == 0 through x^T.
inline SeriesCheckResult series_solution_check(const ThetaOperator &L, const TruncatedSeries<Integer> &f,
                                               std::size_t T)
{
    if (f.order() < T) {
        throw insufficient_truncation("series known through x^" + std::to_string(f.order()) + ", check needs x^"
                                      + std::to_string(T));
    }
    const auto r = apply_operator(L, f.truncated(T));
    const auto v = r.valuation();
    if (v > T) {
        return {true, std::nullopt, r};
    }
    return {false, v, r};
}

} // namespace wittkit

#endif

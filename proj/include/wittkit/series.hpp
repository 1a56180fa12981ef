#ifndef WITTKIT_SERIES_HPP
#define WITTKIT_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <wittkit/errors.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>

namespace wittkit
{

/// One-variable power series known through degree order().
///
/// Coefficients of degree > order() are unknown, not zero. Arithmetic between
/// two series keeps the smaller order.
template <typename R>
class TruncatedSeries
{
public:
    TruncatedSeries(std::string var, std::size_t order) : m_var(std::move(var)), m_coeffs(order + 1, R(0)) {}

    TruncatedSeries(std::string var, std::vector<R> coeffs) : m_var(std::move(var)), m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw domain_error("a truncated series needs at least the constant coefficient");
        }
    }

    // The series t.
    static TruncatedSeries identity(std::string var, std::size_t order)
    {
        TruncatedSeries s(std::move(var), order);
        if (order >= 1) {
            s.m_coeffs[1] = R(1);
        }
        return s;
    }

    static TruncatedSeries constant(std::string var, std::size_t order, const R &c)
    {
        TruncatedSeries s(std::move(var), order);
        s.m_coeffs[0] = c;
        return s;
    }

    const std::string &variable() const noexcept
    {
        return m_var;
    }
    std::size_t order() const noexcept
    {
        return m_coeffs.size() - 1;
    }
    const std::vector<R> &coeffs() const noexcept
    {
        return m_coeffs;
    }

    const R &operator[](std::size_t k) const
    {
        if (k > order()) {
            throw insufficient_truncation("coefficient of degree " + std::to_string(k)
                                          + " is beyond the truncation order " + std::to_string(order()));
        }
        return m_coeffs[k];
    }

    void set(std::size_t k, R c)
    {
        if (k > order()) {
            throw insufficient_truncation("cannot set a coefficient beyond the truncation order");
        }
        m_coeffs[k] = std::move(c);
    }

    TruncatedSeries truncated(std::size_t order) const
    {
        if (order > this->order()) {
            throw insufficient_truncation("cannot raise the truncation order from " + std::to_string(this->order())
                                          + " to " + std::to_string(order));
        }
        return TruncatedSeries(m_var, std::vector<R>(m_coeffs.begin(), m_coeffs.begin() + order + 1));
    }

    std::size_t valuation() const
    {
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            if (!is_zero(m_coeffs[k])) {
                return k;
            }
        }
        return m_coeffs.size();
    }

    // Multiply the degree-m coefficient by a^m, i.e. substitute t -> a*t.
    TruncatedSeries scale_variable(const R &a) const
    {
        TruncatedSeries out = *this;
        R pw(1);
        for (std::size_t k = 1; k < out.m_coeffs.size(); ++k) {
            pw = pw * a;
            out.m_coeffs[k] = out.m_coeffs[k] * pw;
        }
        return out;
    }

    // Substitute t -> t^k. The result is known through degree k*(order+1)-1.
    TruncatedSeries substitute_power(std::size_t k) const
    {
        if (k == 0) {
            throw domain_error("t -> t^0 is not a substitution of positive valuation");
        }
        TruncatedSeries out(m_var, k * (order() + 1) - 1);
        for (std::size_t m = 0; m < m_coeffs.size(); ++m) {
            out.m_coeffs[k * m] = m_coeffs[m];
        }
        return out;
    }

    TruncatedSeries operator-() const
    {
        TruncatedSeries out = *this;
        for (auto &c : out.m_coeffs) {
            c = -c;
        }
        return out;
    }

    friend TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        check_same_variable(a, b);
        TruncatedSeries out(a.m_var, std::min(a.order(), b.order()));
        for (std::size_t k = 0; k < out.m_coeffs.size(); ++k) {
            out.m_coeffs[k] = a.m_coeffs[k] + b.m_coeffs[k];
        }
        return out;
    }

    friend TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a + (-b);
    }

    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        check_same_variable(a, b);
        const std::size_t n = std::min(a.order(), b.order());
        TruncatedSeries out(a.m_var, n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (is_zero(a.m_coeffs[i])) {
                continue;
            }
            for (std::size_t j = 0; i + j <= n; ++j) {
                if (is_zero(b.m_coeffs[j])) {
                    continue;
                }
                out.m_coeffs[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        return out;
    }

    friend TruncatedSeries operator*(const R &c, const TruncatedSeries &s)
    {
        TruncatedSeries out = s;
        for (auto &x : out.m_coeffs) {
            x = c * x;
        }
        return out;
    }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a.m_var == b.m_var && a.m_coeffs == b.m_coeffs;
    }

private:
    static void check_same_variable(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        if (a.m_var != b.m_var) {
            throw variable_mismatch("series in '" + a.m_var + "' and '" + b.m_var + "' cannot be combined");
        }
    }

    std::string m_var;
    std::vector<R> m_coeffs;
};

/// Multiplicative inverse of a series with constant term 1.
template <typename R>
TruncatedSeries<R> series_inverse(const TruncatedSeries<R> &s)
{
    if (!is_one(s[0])) {
        throw domain_error("series_inverse needs constant term 1");
    }
    const std::size_t n = s.order();
    std::vector<R> b(n + 1, R(0));
    b[0] = R(1);
    for (std::size_t k = 1; k <= n; ++k) {
        R acc(0);
        for (std::size_t i = 1; i <= k; ++i) {
            if (!is_zero(s.coeffs()[i]) && !is_zero(b[k - i])) {
                acc += s.coeffs()[i] * b[k - i];
            }
        }
        b[k] = -acc;
    }
    return TruncatedSeries<R>(s.variable(), std::move(b));
}

/// outer(inner) for inner with zero constant term, by Horner's rule.
template <typename R>
TruncatedSeries<R> series_compose(const TruncatedSeries<R> &outer, const TruncatedSeries<R> &inner)
{
    if (!is_zero(inner[0])) {
        throw domain_error("series_compose needs an inner series with zero constant term");
    }
    const std::size_t n = std::min(outer.order(), inner.order());
    const auto in = inner.truncated(n);
    TruncatedSeries<R> acc = TruncatedSeries<R>::constant(inner.variable(), n, outer[n]);
    for (std::size_t k = n; k-- > 0;) {
        acc = acc * in;
        auto c = acc.coeffs();
        c[0] += outer[k];
        acc = TruncatedSeries<R>(inner.variable(), std::move(c));
    }
    return acc;
}

/// Compositional inverse of s = t + O(t^2) by Lagrange inversion:
/// [t^n] s^{-1} = (1/n) [u^{n-1}] (u / s(u))^n.
template <typename R>
TruncatedSeries<R> series_reversion(const TruncatedSeries<R> &s)
{
    if (s.order() < 1 || !is_zero(s[0]) || !is_one(s[1])) {
        throw domain_error("series_reversion needs a series of the form t + O(t^2)");
    }
    const std::size_t n = s.order();
    TruncatedSeries<R> out(s.variable(), n);
    out.set(1, R(1));
    if (n == 1) {
        return out;
    }
    // u/s(u) = 1/(1 + s2 u + ...), known through degree n-1.
    std::vector<R> shifted(s.coeffs().begin() + 1, s.coeffs().end());
    const auto h = series_inverse(TruncatedSeries<R>(s.variable(), std::move(shifted)));
    auto hp = h;
    for (std::size_t k = 2; k <= n; ++k) {
        hp = hp * h;
        out.set(k, hp[k - 1] * R(Rational(1, static_cast<unsigned long>(k))));
    }
    return out;
}

/// exp(s) for s with zero constant term, via k f_k = sum_j j s_j f_{k-j}.
template <typename R>
TruncatedSeries<R> series_exp(const TruncatedSeries<R> &s)
{
    if (!is_zero(s[0])) {
        throw domain_error("series_exp needs zero constant term");
    }
    const std::size_t n = s.order();
    std::vector<R> f(n + 1, R(0));
    f[0] = R(1);
    for (std::size_t k = 1; k <= n; ++k) {
        R acc(0);
        for (std::size_t j = 1; j <= k; ++j) {
            if (!is_zero(s.coeffs()[j]) && !is_zero(f[k - j])) {
                acc += R(Rational(static_cast<unsigned long>(j))) * s.coeffs()[j] * f[k - j];
            }
        }
        f[k] = acc * R(Rational(1, static_cast<unsigned long>(k)));
    }
    return TruncatedSeries<R>(s.variable(), std::move(f));
}

/// Power series in several variables, known through total degree degree().
template <typename R>
class MultiSeries
{
public:
    using exponent_type = std::vector<std::uint32_t>;
    using term_map = std::map<exponent_type, R>;

    MultiSeries(std::vector<std::string> vars, std::size_t degree) : m_vars(std::move(vars)), m_degree(degree) {}

    static MultiSeries variable(std::vector<std::string> vars, std::size_t i, std::size_t degree)
    {
        MultiSeries s(std::move(vars), degree);
        if (degree >= 1) {
            exponent_type e(s.m_vars.size(), 0);
            e.at(i) = 1;
            s.m_terms.emplace(std::move(e), R(1));
        }
        return s;
    }

    static MultiSeries constant(std::vector<std::string> vars, std::size_t degree, const R &c)
    {
        MultiSeries s(std::move(vars), degree);
        s.add_term(exponent_type(s.m_vars.size(), 0), c);
        return s;
    }

    // Embed a univariate series as a series in vars[i].
    static MultiSeries from_univariate(std::vector<std::string> vars, std::size_t i, const TruncatedSeries<R> &s)
    {
        MultiSeries out(std::move(vars), s.order());
        for (std::size_t k = 0; k <= s.order(); ++k) {
            exponent_type e(out.m_vars.size(), 0);
            e.at(i) = static_cast<std::uint32_t>(k);
            out.add_term(std::move(e), s[k]);
        }
        return out;
    }

    const std::vector<std::string> &variables() const noexcept
    {
        return m_vars;
    }
    std::size_t degree() const noexcept
    {
        return m_degree;
    }
    const term_map &terms() const noexcept
    {
        return m_terms;
    }

    R coefficient(const exponent_type &e) const
    {
        if (total(e) > m_degree) {
            throw insufficient_truncation("coefficient beyond the total-degree truncation");
        }
        auto it = m_terms.find(e);
        return it == m_terms.end() ? R(0) : it->second;
    }

    MultiSeries truncated(std::size_t degree) const
    {
        if (degree > m_degree) {
            throw insufficient_truncation("cannot raise the truncation degree");
        }
        MultiSeries out(m_vars, degree);
        for (const auto &[e, c] : m_terms) {
            if (total(e) <= degree) {
                out.m_terms.emplace(e, c);
            }
        }
        return out;
    }

    MultiSeries operator-() const
    {
        MultiSeries out(m_vars, m_degree);
        for (const auto &[e, c] : m_terms) {
            out.m_terms.emplace(e, R(-c));
        }
        return out;
    }

    friend MultiSeries operator+(const MultiSeries &a, const MultiSeries &b)
    {
        check_compatible(a, b);
        const auto d = std::min(a.m_degree, b.m_degree);
        MultiSeries out = a.truncated(d);
        for (const auto &[e, c] : b.m_terms) {
            if (total(e) <= d) {
                out.add_term(e, c);
            }
        }
        return out;
    }

    friend MultiSeries operator-(const MultiSeries &a, const MultiSeries &b)
    {
        return a + (-b);
    }

    friend MultiSeries operator*(const MultiSeries &a, const MultiSeries &b)
    {
        check_compatible(a, b);
        const auto d = std::min(a.m_degree, b.m_degree);
        MultiSeries out(a.m_vars, d);
        exponent_type e(a.m_vars.size());
        for (const auto &[ea, ca] : a.m_terms) {
            const auto da = total(ea);
            if (da > d) {
                continue;
            }
            for (const auto &[eb, cb] : b.m_terms) {
                if (da + total(eb) > d) {
                    continue;
                }
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend MultiSeries operator*(const R &c, const MultiSeries &s)
    {
        MultiSeries out(s.m_vars, s.m_degree);
        for (const auto &[e, x] : s.m_terms) {
            out.add_term(e, c * x);
        }
        return out;
    }

    friend bool operator==(const MultiSeries &a, const MultiSeries &b)
    {
        return a.m_vars == b.m_vars && a.m_degree == b.m_degree && a.m_terms == b.m_terms;
    }

    void add_term(const exponent_type &e, const R &c)
    {
        if (total(e) > m_degree || is_zero(c)) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

    static std::size_t total(const exponent_type &e)
    {
        std::size_t s = 0;
        for (auto x : e) {
            s += x;
        }
        return s;
    }

private:
    static void check_compatible(const MultiSeries &a, const MultiSeries &b)
    {
        if (a.m_vars != b.m_vars) {
            throw variable_mismatch("multivariate series over different variables");
        }
    }

    std::vector<std::string> m_vars;
    std::size_t m_degree;
    term_map m_terms;
};

template <typename R>
using BivariateTruncatedSeries = MultiSeries<R>;

/// outer(inner) where inner is multivariate with zero constant term.
template <typename R>
MultiSeries<R> compose_into(const TruncatedSeries<R> &outer, const MultiSeries<R> &inner)
{
    if (!is_zero(inner.coefficient(typename MultiSeries<R>::exponent_type(inner.variables().size(), 0)))) {
        throw domain_error("inner series must have zero constant term");
    }
    const std::size_t d = std::min(outer.order(), inner.degree());
    const auto in = inner.truncated(d);
    auto acc = MultiSeries<R>::constant(inner.variables(), d, outer[d]);
    for (std::size_t k = d; k-- > 0;) {
        acc = acc * in;
        acc.add_term(typename MultiSeries<R>::exponent_type(inner.variables().size(), 0), outer[k]);
    }
    return acc;
}

/// Substitute series args[i] (all over the same variables, zero constant
/// terms) for the i-th variable of f.
template <typename R>
MultiSeries<R> substitute(const MultiSeries<R> &f, const std::vector<MultiSeries<R>> &args)
{
    if (args.size() != f.variables().size() || args.empty()) {
        throw variable_mismatch("substitution needs one argument per variable");
    }
    std::size_t d = f.degree();
    for (const auto &a : args) {
        d = std::min(d, a.degree());
    }
    const auto &vars = args.front().variables();
    // powers[i][k] = args[i]^k
    std::vector<std::vector<MultiSeries<R>>> powers(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        powers[i].push_back(MultiSeries<R>::constant(vars, d, R(1)));
        for (std::size_t k = 1; k <= d; ++k) {
            powers[i].push_back(powers[i].back() * args[i].truncated(d));
        }
    }
    MultiSeries<R> out(vars, d);
    for (const auto &[e, c] : f.terms()) {
        if (MultiSeries<R>::total(e) > d) {
            continue;
        }
        auto term = MultiSeries<R>::constant(vars, d, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) {
                term = term * powers[i][e[i]];
            }
        }
        out = out + term;
    }
    return out;
}

using RatSeries = TruncatedSeries<RatPolynomial>;
using IntSeries = TruncatedSeries<IntPolynomial>;

} // namespace wittkit

#endif

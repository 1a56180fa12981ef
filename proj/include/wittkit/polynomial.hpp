#ifndef WITTKIT_POLYNOMIAL_HPP
#define WITTKIT_POLYNOMIAL_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <wittkit/errors.hpp>
#include <wittkit/integer.hpp>

namespace wittkit
{

/// Sparse multivariate polynomial with exact coefficients in R.
///
/// The term map is kept canonical: no zero coefficients, every exponent
/// vector has one entry per declared variable, keys ordered
/// lexicographically along the declared variable list. Binary operations on
/// polynomials with different variable lists work over the union of the
/// lists (left operand's order first).
template <typename R>
class Polynomial
{
public:
    using coefficient_type = R;
    using exponent_type = std::vector<std::uint32_t>;
    using term_map = std::map<exponent_type, R>;

    Polynomial() = default;

    Polynomial(const R &c)
    {
        if (!wittkit::is_zero(c)) {
            m_terms.emplace(exponent_type{}, c);
        }
    }

    template <std::integral I>
    Polynomial(I c) : Polynomial(R(static_cast<long>(c)))
    {
    }

    explicit Polynomial(std::vector<std::string> vars) : m_vars(std::move(vars))
    {
        check_unique(m_vars);
    }

    static Polynomial variable(const std::string &name)
    {
        Polynomial p(std::vector<std::string>{name});
        p.m_terms.emplace(exponent_type{1}, R(1));
        return p;
    }

    static Polynomial monomial(std::vector<std::string> vars, exponent_type exps, const R &c)
    {
        Polynomial p(std::move(vars));
        if (exps.size() != p.m_vars.size()) {
            throw variable_mismatch("exponent vector length does not match the variable list");
        }
        p.add_term(std::move(exps), c);
        return p;
    }

    static Polynomial from_terms(std::vector<std::string> vars, term_map terms)
    {
        Polynomial p(std::move(vars));
        for (auto &[e, c] : terms) {
            if (e.size() != p.m_vars.size()) {
                throw variable_mismatch("exponent vector length does not match the variable list");
            }
            if (!wittkit::is_zero(c)) {
                p.m_terms.emplace(e, std::move(c));
            }
        }
        return p;
    }

    const std::vector<std::string> &variables() const noexcept
    {
        return m_vars;
    }
    const term_map &terms() const noexcept
    {
        return m_terms;
    }
    std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    bool is_constant() const
    {
        return m_terms.empty() || (m_terms.size() == 1 && is_zero_exponent(m_terms.begin()->first));
    }

    R constant_term() const
    {
        return coefficient(exponent_type(m_vars.size(), 0));
    }

    R coefficient(const exponent_type &e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? R(0) : it->second;
    }

    std::uint32_t total_degree() const
    {
        std::uint32_t d = 0;
        for (const auto &[e, c] : m_terms) {
            std::uint32_t s = 0;
            for (auto x : e) {
                s += x;
            }
            d = std::max(d, s);
        }
        return d;
    }

    std::uint32_t degree_in(const std::string &var) const
    {
        const auto idx = index_of(var);
        if (idx == npos) {
            return 0;
        }
        std::uint32_t d = 0;
        for (const auto &[e, c] : m_terms) {
            d = std::max(d, e[idx]);
        }
        return d;
    }

    std::size_t index_of(const std::string &var) const
    {
        auto it = std::find(m_vars.begin(), m_vars.end(), var);
        return it == m_vars.end() ? npos : static_cast<std::size_t>(it - m_vars.begin());
    }

    // Re-express over a new variable list. Declared-but-unused variables may be dropped.
    Polynomial with_variables(const std::vector<std::string> &vars) const
    {
        if (vars == m_vars) {
            return *this;
        }
        std::vector<std::size_t> target(m_vars.size());
        for (std::size_t i = 0; i < m_vars.size(); ++i) {
            auto it = std::find(vars.begin(), vars.end(), m_vars[i]);
            target[i] = it == vars.end() ? npos : static_cast<std::size_t>(it - vars.begin());
        }
        Polynomial out(vars);
        for (const auto &[e, c] : m_terms) {
            exponent_type ne(vars.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) {
                    continue;
                }
                if (target[i] == npos) {
                    throw variable_mismatch("variable '" + m_vars[i] + "' is not in the target variable list");
                }
                ne[target[i]] = e[i];
            }
            out.m_terms.emplace(std::move(ne), c);
        }
        return out;
    }

    // Substitute a constant for one variable; the variable stays declared.
    Polynomial substitute(const std::string &var, const R &value) const
    {
        const auto idx = index_of(var);
        if (idx == npos) {
            return *this;
        }
        Polynomial out(m_vars);
        std::map<std::uint32_t, R> powers;
        for (const auto &[e, c] : m_terms) {
            auto [it, inserted] = powers.try_emplace(e[idx]);
            if (inserted) {
                it->second = power_of(value, e[idx]);
            }
            exponent_type ne = e;
            ne[idx] = 0;
            out.add_term(std::move(ne), c * it->second);
        }
        return out;
    }

    template <typename F>
    auto map_coefficients(F &&f) const
    {
        using S = std::decay_t<decltype(f(std::declval<const R &>()))>;
        typename Polynomial<S>::term_map t;
        for (const auto &[e, c] : m_terms) {
            S v = f(c);
            if (!wittkit::is_zero(v)) {
                t.emplace(e, std::move(v));
            }
        }
        return Polynomial<S>::from_terms(m_vars, std::move(t));
    }

    Polynomial pow(unsigned long n) const
    {
        Polynomial result(R(1));
        result = result.with_variables(m_vars);
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1u) {
                result = result * base;
            }
            n >>= 1;
            if (n > 0) {
                base = base * base;
            }
        }
        return result;
    }

    Polynomial operator-() const
    {
        Polynomial out(m_vars);
        for (const auto &[e, c] : m_terms) {
            out.m_terms.emplace(e, R(-c));
        }
        return out;
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        if (o.m_vars != m_vars) {
            return *this = *this + o;
        }
        for (const auto &[e, c] : o.m_terms) {
            add_term(e, c);
        }
        return *this;
    }

    Polynomial &operator-=(const Polynomial &o)
    {
        return *this += -o;
    }

    Polynomial &operator*=(const Polynomial &o)
    {
        return *this = *this * o;
    }

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b)
    {
        if (a.m_vars == b.m_vars) {
            Polynomial out = a;
            for (const auto &[e, c] : b.m_terms) {
                out.add_term(e, c);
            }
            return out;
        }
        const auto vars = merged_variables(a.m_vars, b.m_vars);
        return a.with_variables(vars) + b.with_variables(vars);
    }

    friend Polynomial operator-(const Polynomial &a, const Polynomial &b)
    {
        return a + (-b);
    }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        if (a.m_vars != b.m_vars) {
            const auto vars = merged_variables(a.m_vars, b.m_vars);
            return a.with_variables(vars) * b.with_variables(vars);
        }
        Polynomial out(a.m_vars);
        if (a.is_zero() || b.is_zero()) {
            return out;
        }
        exponent_type e(a.m_vars.size());
        for (const auto &[ea, ca] : a.m_terms) {
            for (const auto &[eb, cb] : b.m_terms) {
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        if (a.m_vars == b.m_vars) {
            return a.m_terms == b.m_terms;
        }
        const auto vars = merged_variables(a.m_vars, b.m_vars);
        return a.with_variables(vars).m_terms == b.with_variables(vars).m_terms;
    }

    friend bool is_zero(const Polynomial &p) noexcept
    {
        return p.is_zero();
    }

    static std::vector<std::string> merged_variables(const std::vector<std::string> &a,
                                                     const std::vector<std::string> &b)
    {
        std::vector<std::string> out = a;
        for (const auto &v : b) {
            if (std::find(out.begin(), out.end(), v) == out.end()) {
                out.push_back(v);
            }
        }
        return out;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Accumulate c into the coefficient of e, keeping the map canonical.
    void add_term(const exponent_type &e, const R &c)
    {
        if (wittkit::is_zero(c)) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (wittkit::is_zero(it->second)) {
                m_terms.erase(it);
            }
        }
    }

private:
    static bool is_zero_exponent(const exponent_type &e)
    {
        return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    }

    static R power_of(const R &v, std::uint32_t n)
    {
        R r(1);
        for (std::uint32_t i = 0; i < n; ++i) {
            r *= v;
        }
        return r;
    }

    static void check_unique(const std::vector<std::string> &vars)
    {
        for (std::size_t i = 0; i < vars.size(); ++i) {
            for (std::size_t j = i + 1; j < vars.size(); ++j) {
                if (vars[i] == vars[j]) {
                    throw variable_mismatch("duplicate variable '" + vars[i] + "'");
                }
            }
        }
    }

    std::vector<std::string> m_vars;
    term_map m_terms;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

/// Coefficient of the monomial prod vars[i]^exps[i] in p, as a polynomial in
/// p's remaining variables. Variables of p not listed are kept.
template <typename R>
Polynomial<R> coefficient_of(const Polynomial<R> &p, std::span<const std::string> vars,
                             std::span<const std::uint32_t> exps)
{
    if (vars.size() != exps.size()) {
        throw variable_mismatch("monomial has " + std::to_string(exps.size()) + " exponents for "
                                + std::to_string(vars.size()) + " variables");
    }
    std::vector<std::size_t> idx;
    for (const auto &v : vars) {
        const auto i = p.index_of(v);
        if (i == Polynomial<R>::npos) {
            throw variable_mismatch("monomial references unknown variable '" + v + "'");
        }
        if (std::find(idx.begin(), idx.end(), i) != idx.end()) {
            throw variable_mismatch("monomial repeats variable '" + v + "'");
        }
        idx.push_back(i);
    }
    std::vector<std::string> rest;
    std::vector<std::size_t> rest_idx;
    for (std::size_t i = 0; i < p.variables().size(); ++i) {
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) {
            rest.push_back(p.variables()[i]);
            rest_idx.push_back(i);
        }
    }
    typename Polynomial<R>::term_map out;
    for (const auto &[e, c] : p.terms()) {
        bool match = true;
        for (std::size_t k = 0; k < idx.size() && match; ++k) {
            match = e[idx[k]] == exps[k];
        }
        if (!match) {
            continue;
        }
        typename Polynomial<R>::exponent_type re(rest_idx.size());
        for (std::size_t k = 0; k < rest_idx.size(); ++k) {
            re[k] = e[rest_idx[k]];
        }
        out.emplace(std::move(re), c);
    }
    return Polynomial<R>::from_terms(std::move(rest), std::move(out));
}

template <typename R>
Polynomial<R> coefficient_of(const Polynomial<R> &p, std::initializer_list<std::string> vars,
                             std::initializer_list<std::uint32_t> exps)
{
    const std::vector<std::string> v(vars);
    const std::vector<std::uint32_t> e(exps);
    return coefficient_of(p, std::span<const std::string>(v), std::span<const std::uint32_t>(e));
}

/// Reduce every coefficient into [0, n); zero terms vanish.
inline IntPolynomial poly_reduce_mod(const IntPolynomial &p, const Integer &n)
{
    if (n < 1) {
        throw domain_error("modulus must be positive");
    }
    return p.map_coefficients([&](const Integer &c) { return mod_floor(c, n); });
}

inline RatPolynomial to_rational(const IntPolynomial &p)
{
    return p.map_coefficients([](const Integer &c) { return Rational(c); });
}

// Nothing when some coefficient has a denominator.
inline std::optional<IntPolynomial> to_integral(const RatPolynomial &p)
{
    typename IntPolynomial::term_map t;
    for (const auto &[e, c] : p.terms()) {
        auto z = to_integer(c);
        if (!z) {
            return std::nullopt;
        }
        t.emplace(e, std::move(*z));
    }
    return IntPolynomial::from_terms(p.variables(), std::move(t));
}

inline bool is_integral(const RatPolynomial &p)
{
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const auto &kv) { return kv.second.get_den() == 1; });
}

// Exact quotient p / k, or nothing when some coefficient is not divisible.
inline std::optional<IntPolynomial> divide_exact(const IntPolynomial &p, const Integer &k)
{
    typename IntPolynomial::term_map t;
    for (const auto &[e, c] : p.terms()) {
        auto q = divide_exact(c, k);
        if (!q) {
            return std::nullopt;
        }
        t.emplace(e, std::move(*q));
    }
    return IntPolynomial::from_terms(p.variables(), std::move(t));
}

inline bool is_one(const IntPolynomial &p)
{
    return p.is_constant() && p.constant_term() == 1;
}

inline bool is_one(const RatPolynomial &p)
{
    return p.is_constant() && p.constant_term() == 1;
}

} // namespace wittkit

#endif

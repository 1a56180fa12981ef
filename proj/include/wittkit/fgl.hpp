#ifndef WITTKIT_FGL_HPP
#define WITTKIT_FGL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <wittkit/errors.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>
#include <wittkit/series.hpp>
#include <wittkit/witt.hpp>

namespace wittkit
{

/// Logarithm l(t) = sum_{m=1..M} (a_m / m) t^m with integral a_m and a_1 = 1.
class Logarithm
{
public:
    explicit Logarithm(std::vector<IntPolynomial> coeffs, std::optional<std::string> ring = {})
        : m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw domain_error("a logarithm needs at least a_1");
        }
        if (!is_one(m_coeffs.front())) {
            throw domain_error("a logarithm must have a_1 = 1");
        }
        bool constant = true;
        for (const auto &a : m_coeffs) {
            constant = constant && a.is_constant();
        }
        m_ring = ring.value_or(constant ? "Z" : "Z[x]");
        if (m_ring != "Z" && m_ring != "Z[x]") {
            throw domain_error("unsupported parameter ring '" + m_ring + "'");
        }
        if (m_ring == "Z" && !constant) {
            throw domain_error("ring Z declared but some a_m is not constant");
        }
    }

    // l(t) = t.
    static Logarithm additive(std::size_t M)
    {
        std::vector<IntPolynomial> c(M, IntPolynomial(0));
        c.at(0) = IntPolynomial(1);
        return Logarithm(std::move(c));
    }

    // l(t) = -log(1 - t), all a_m = 1.
    static Logarithm multiplicative(std::size_t M)
    {
        return Logarithm(std::vector<IntPolynomial>(M, IntPolynomial(1)));
    }

    std::size_t truncation() const noexcept
    {
        return m_coeffs.size();
    }
    const std::string &ring() const noexcept
    {
        return m_ring;
    }
    const std::vector<IntPolynomial> &coeffs() const noexcept
    {
        return m_coeffs;
    }
    // 1-based.
    const IntPolynomial &coeff(std::size_t m) const
    {
        if (m == 0 || m > m_coeffs.size()) {
            throw insufficient_truncation("logarithm coefficient a_" + std::to_string(m) + " is beyond M = "
                                          + std::to_string(m_coeffs.size()));
        }
        return m_coeffs[m - 1];
    }

    bool is_multiplicative() const
    {
        for (const auto &a : m_coeffs) {
            if (!is_one(a)) {
                return false;
            }
        }
        return true;
    }

    Logarithm truncated(std::size_t M) const
    {
        if (M == 0 || M > m_coeffs.size()) {
            throw insufficient_truncation("cannot truncate logarithm to M = " + std::to_string(M));
        }
        return Logarithm(std::vector<IntPolynomial>(m_coeffs.begin(), m_coeffs.begin() + M), m_ring);
    }

    // Specialize a parameter, e.g. x = 0.
    Logarithm evaluated_at(const std::string &var, const Integer &value) const
    {
        std::vector<IntPolynomial> c;
        c.reserve(m_coeffs.size());
        for (const auto &a : m_coeffs) {
            auto s = a.substitute(var, value);
            c.push_back(s.is_constant() ? IntPolynomial(s.constant_term()) : s);
        }
        return Logarithm(std::move(c));
    }

    // The series l(t) through degree M, coefficients in Q[params].
    RatSeries series(const std::string &var = "t") const
    {
        RatSeries s(var, m_coeffs.size());
        for (std::size_t m = 1; m <= m_coeffs.size(); ++m) {
            s.set(m, to_rational(m_coeffs[m - 1]) * RatPolynomial(Rational(1, static_cast<unsigned long>(m))));
        }
        return s;
    }

    friend bool operator==(const Logarithm &a, const Logarithm &b)
    {
        return a.m_coeffs == b.m_coeffs;
    }

private:
    std::vector<IntPolynomial> m_coeffs;
    std::string m_ring;
};

/// G(t1, t2) = l^{-1}(l(t1) + l(t2)) through total degree D.
class FormalGroupLaw
{
public:
    FormalGroupLaw(BivariateTruncatedSeries<RatPolynomial> series, Logarithm log)
        : m_series(std::move(series)), m_log(std::move(log))
    {
    }

    const BivariateTruncatedSeries<RatPolynomial> &series() const noexcept
    {
        return m_series;
    }
    const Logarithm &logarithm() const noexcept
    {
        return m_log;
    }
    std::size_t degree() const noexcept
    {
        return m_series.degree();
    }
    RatPolynomial coefficient(std::uint32_t i, std::uint32_t j) const
    {
        return m_series.coefficient({i, j});
    }

    // Evaluate at series arguments over a common variable list.
    MultiSeries<RatPolynomial> operator()(const MultiSeries<RatPolynomial> &a,
                                          const MultiSeries<RatPolynomial> &b) const
    {
        return substitute(m_series, {a, b});
    }

private:
    BivariateTruncatedSeries<RatPolynomial> m_series;
    Logarithm m_log;
};

inline FormalGroupLaw group_law_from_logarithm(const Logarithm &log, std::size_t D)
{
    if (D == 0) {
        throw domain_error("group law degree must be positive");
    }
    if (D > log.truncation()) {
        throw insufficient_truncation("group law to degree " + std::to_string(D) + " needs M >= "
                                      + std::to_string(D) + ", logarithm has M = "
                                      + std::to_string(log.truncation()));
    }
    const auto ell = log.truncated(D).series();
    const auto inv = series_reversion(ell);
    const std::vector<std::string> vars{"t1", "t2"};
    const auto sum = MultiSeries<RatPolynomial>::from_univariate(vars, 0, ell)
                     + MultiSeries<RatPolynomial>::from_univariate(vars, 1, ell);
    return FormalGroupLaw(compose_into(inv, sum), log);
}

struct IntegralityReport {
    bool pass = true;
    // (i, j) of every coefficient of t1^i t2^j with a denominator.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> offending;
};

inline IntegralityReport integrality_report(const FormalGroupLaw &g)
{
    IntegralityReport r;
    for (const auto &[e, c] : g.series().terms()) {
        if (!is_integral(c)) {
            r.pass = false;
            r.offending.emplace_back(e[0], e[1]);
        }
    }
    return r;
}

/// A curve in the formal group, held in log coordinates eta(t) = l(gamma(t)).
class Curve
{
public:
    Curve(std::shared_ptr<const Logarithm> log, RatSeries eta) : m_log(std::move(log)), m_eta(std::move(eta))
    {
        if (!m_log) {
            throw domain_error("curve needs an ambient logarithm");
        }
        if (!is_zero(m_eta[0])) {
            throw domain_error("log coordinate of a curve has zero constant term");
        }
        if (m_eta.order() > m_log->truncation()) {
            throw insufficient_truncation("curve truncation " + std::to_string(m_eta.order())
                                          + " exceeds the logarithm truncation "
                                          + std::to_string(m_log->truncation()));
        }
    }

    // gamma(t) = t, so eta = l.
    static Curve canonical(std::shared_ptr<const Logarithm> log, std::size_t order)
    {
        auto eta = log->series().truncated(order);
        return Curve(std::move(log), std::move(eta));
    }

    static Curve zero(std::shared_ptr<const Logarithm> log, std::size_t order)
    {
        return Curve(std::move(log), RatSeries("t", order));
    }

    static Curve from_gamma(std::shared_ptr<const Logarithm> log, const RatSeries &gamma)
    {
        auto eta = series_compose(log->series(), gamma);
        return Curve(std::move(log), std::move(eta));
    }

    const RatSeries &log_coordinates() const noexcept
    {
        return m_eta;
    }
    std::size_t order() const noexcept
    {
        return m_eta.order();
    }
    const std::shared_ptr<const Logarithm> &ambient() const noexcept
    {
        return m_log;
    }

    // gamma(t) = l^{-1}(eta(t)).
    RatSeries gamma() const
    {
        const auto inv = series_reversion(m_log->truncated(std::max<std::size_t>(order(), 1)).series());
        return series_compose(inv, m_eta);
    }

    bool same_ambient(const Curve &o) const
    {
        return m_log == o.m_log || *m_log == *o.m_log;
    }

    friend bool operator==(const Curve &a, const Curve &b)
    {
        return a.same_ambient(b) && a.m_eta == b.m_eta;
    }

private:
    std::shared_ptr<const Logarithm> m_log;
    RatSeries m_eta;
};

namespace detail
{

inline void check_ambient(const Curve &a, const Curve &b)
{
    if (!a.same_ambient(b)) {
        throw domain_error("curves live in formal groups with different logarithms");
    }
}

} // namespace detail

/// Formal-group sum: literal addition of log coordinates.
inline Curve fg_add(const Curve &a, const Curve &b)
{
    detail::check_ambient(a, b);
    if (a.order() != b.order()) {
        throw domain_error("curves of different truncation orders");
    }
    return Curve(a.ambient(), a.log_coordinates() + b.log_coordinates());
}

inline Curve fg_neg(const Curve &a)
{
    return Curve(a.ambient(), -a.log_coordinates());
}

/// <a>: gamma(t) -> gamma(a t).
inline Curve curve_scale(const IntPolynomial &a, const Curve &c)
{
    return Curve(c.ambient(), c.log_coordinates().scale_variable(to_rational(a)));
}

/// V_k: gamma(t) -> gamma(t^k). Known through k(T+1)-1, capped at M.
inline Curve curve_verschiebung(std::size_t k, const Curve &c, std::optional<std::size_t> out_order = {})
{
    if (k == 0) {
        throw domain_error("Verschiebung index must be positive");
    }
    const auto sub = c.log_coordinates().substitute_power(k);
    const std::size_t cap = std::min(sub.order(), c.ambient()->truncation());
    const std::size_t T = out_order.value_or(cap);
    if (T > cap) {
        throw insufficient_truncation("V_" + std::to_string(k) + " of this curve is known only through degree "
                                      + std::to_string(cap));
    }
    return Curve(c.ambient(), sub.truncated(T));
}

/// F_k. Summing over k-th roots of unity in log coordinates keeps exactly the
/// degrees divisible by k: eta = sum c_m t^m -> sum_j k c_{kj} t^j.
inline Curve curve_frobenius(std::size_t k, const Curve &c, std::optional<std::size_t> out_order = {})
{
    if (k == 0) {
        throw domain_error("Frobenius index must be positive");
    }
    const std::size_t T = out_order.value_or(c.order() / k);
    if (k * T > c.order()) {
        throw insufficient_truncation("F_" + std::to_string(k) + " to order " + std::to_string(T)
                                      + " needs curve truncation " + std::to_string(k * T) + ", got "
                                      + std::to_string(c.order()));
    }
    RatSeries out("t", T);
    const RatPolynomial kk(Rational(static_cast<unsigned long>(k)));
    for (std::size_t j = 1; j <= T; ++j) {
        out.set(j, kk * c.log_coordinates()[k * j]);
    }
    return Curve(c.ambient(), std::move(out));
}

/// Degree-1 coefficient of F_k applied to the canonical curve; equals a_k.
inline IntPolynomial frobenius_matrix_1d(const Logarithm &log, std::size_t k)
{
    if (k == 0 || k > log.truncation()) {
        throw domain_error("Frobenius index k = " + std::to_string(k) + " out of range 1.."
                           + std::to_string(log.truncation()));
    }
    auto shared = std::make_shared<const Logarithm>(log);
    const auto canon = Curve::canonical(shared, k);
    const auto fk = curve_frobenius(k, canon, 1);
    // gamma = l^{-1}(eta) agrees with eta mod t^2.
    auto a = to_integral(fk.gamma()[1]);
    if (!a) {
        throw invariant_violation("F_k of the canonical curve has a non-integral linear coefficient");
    }
    return *a;
}

/// For the multiplicative law: gamma(t) -> (1 - gamma(t))^{-1} = exp(eta(t)),
/// read as a Witt vector of length equal to the curve order.
inline WittVector<IntPolynomial> witt_cartier_bridge(const Curve &c)
{
    if (!c.ambient()->is_multiplicative()) {
        throw domain_error("the Witt bridge needs the multiplicative formal group (all a_m = 1)");
    }
    if (c.order() == 0) {
        throw domain_error("curve must be known through degree at least 1");
    }
    const auto f = series_exp(c.log_coordinates());
    std::vector<IntPolynomial> coeffs;
    coeffs.reserve(f.order() + 1);
    for (const auto &x : f.coeffs()) {
        auto z = to_integral(x);
        if (!z) {
            throw integrality_failure(coeffs.size(), "curve does not have integral t-coordinates");
        }
        coeffs.push_back(std::move(*z));
    }
    return from_series(IntSeries("t", std::move(coeffs)));
}

/// Inverse direction: eta_m = ghost_m / m.
inline Curve curve_from_witt(std::shared_ptr<const Logarithm> log, const WittVector<IntPolynomial> &w)
{
    const auto g = to_ghost(w);
    RatSeries eta("t", w.length());
    for (std::size_t m = 1; m <= w.length(); ++m) {
        eta.set(m, to_rational(g.entry(m)) * RatPolynomial(Rational(1, static_cast<unsigned long>(m))));
    }
    return Curve(std::move(log), std::move(eta));
}

} // namespace wittkit

#endif

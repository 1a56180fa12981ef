#ifndef WITTKIT_WITT_HPP
#define WITTKIT_WITT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <wittkit/errors.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>
#include <wittkit/series.hpp>

namespace wittkit
{

// Coefficient rings on which the ghost map is injective.
template <typename R>
struct is_torsion_free : std::false_type {
};
template <>
struct is_torsion_free<Integer> : std::true_type {
};
template <>
struct is_torsion_free<IntPolynomial> : std::true_type {
};
template <typename R>
inline constexpr bool is_torsion_free_v = is_torsion_free<R>::value;

/// Truncated big Witt vector (a_1, ..., a_n): the class of
/// prod_i (1 - a_i t^i)^{-1} in (1 + tA[[t]]) / (1 + t^{n+1}A[[t]]).
template <typename R = IntPolynomial>
class WittVector
{
    static_assert(is_torsion_free_v<R>, "Witt vectors are only supported over torsion-free rings (Z, Z[x])");

public:
    using coefficient_type = R;

    explicit WittVector(std::vector<R> coords) : m_coords(std::move(coords))
    {
        if (m_coords.empty()) {
            throw domain_error("Witt vector length must be at least 1");
        }
    }

    static WittVector zero(std::size_t n)
    {
        if (n == 0) {
            throw domain_error("Witt vector length must be at least 1");
        }
        return WittVector(std::vector<R>(n, R(0)));
    }

    std::size_t length() const noexcept
    {
        return m_coords.size();
    }
    const std::vector<R> &coords() const noexcept
    {
        return m_coords;
    }
    // 1-based, matching a_1..a_n.
    const R &coord(std::size_t i) const
    {
        return m_coords.at(i - 1);
    }

    friend bool operator==(const WittVector &, const WittVector &) = default;

private:
    std::vector<R> m_coords;
};

template <typename R = IntPolynomial>
class GhostVector
{
public:
    explicit GhostVector(std::vector<R> entries) : m_entries(std::move(entries)) {}

    std::size_t length() const noexcept
    {
        return m_entries.size();
    }
    const std::vector<R> &entries() const noexcept
    {
        return m_entries;
    }
    const R &entry(std::size_t k) const
    {
        return m_entries.at(k - 1);
    }

    friend bool operator==(const GhostVector &, const GhostVector &) = default;

private:
    std::vector<R> m_entries;
};

namespace detail
{

inline std::vector<std::size_t> proper_divisors(std::size_t k)
{
    std::vector<std::size_t> out;
    for (std::size_t d = 1; d < k; ++d) {
        if (k % d == 0) {
            out.push_back(d);
        }
    }
    return out;
}

// Table of a^1..a^top, grown on demand.
template <typename R>
class power_table
{
public:
    explicit power_table(R base) : m_pows{R(1), std::move(base)} {}
    const R &operator()(std::size_t e)
    {
        while (m_pows.size() <= e) {
            m_pows.push_back(m_pows.back() * m_pows[1]);
        }
        return m_pows[e];
    }

private:
    std::vector<R> m_pows;
};

template <typename R>
void check_lengths(const WittVector<R> &u, const WittVector<R> &v)
{
    if (u.length() != v.length()) {
        throw length_mismatch("Witt vectors of lengths " + std::to_string(u.length()) + " and "
                              + std::to_string(v.length()));
    }
}

} // namespace detail

/// <a> = (a, 0, ..., 0), the series (1 - a t)^{-1}.
template <typename R>
WittVector<R> teichmueller(const R &a, std::size_t n)
{
    auto w = WittVector<R>::zero(n);
    std::vector<R> c = w.coords();
    c[0] = a;
    return WittVector<R>(std::move(c));
}

/// g_k = sum_{d | k} d * a_d^{k/d}.
template <typename R>
GhostVector<R> to_ghost(const WittVector<R> &w)
{
    const std::size_t n = w.length();
    std::vector<R> g(n, R(0));
    for (std::size_t d = 1; d <= n; ++d) {
        const R &a = w.coord(d);
        if (is_zero(a)) {
            continue;
        }
        detail::power_table<R> pw(a);
        for (std::size_t k = d; k <= n; k += d) {
            g[k - 1] += R(static_cast<long>(d)) * pw(k / d);
        }
    }
    return GhostVector<R>(std::move(g));
}

/// Inverse of to_ghost. Throws integrality_failure at the first k where
/// (g_k - sum_{d|k, d<k} d a_d^{k/d}) is not divisible by k.
template <typename R>
WittVector<R> from_ghost(const GhostVector<R> &g)
{
    const std::size_t n = g.length();
    if (n == 0) {
        throw domain_error("ghost vector length must be at least 1");
    }
    std::vector<R> a;
    std::vector<detail::power_table<R>> pw;
    a.reserve(n);
    pw.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        R rest = g.entry(k);
        for (auto d : detail::proper_divisors(k)) {
            if (!is_zero(a[d - 1])) {
                rest -= R(static_cast<long>(d)) * pw[d - 1](k / d);
            }
        }
        auto q = divide_exact(rest, Integer(static_cast<unsigned long>(k)));
        if (!q) {
            throw integrality_failure(k, "ghost vector is not integral: division by " + std::to_string(k)
                                             + " is not exact at index " + std::to_string(k));
        }
        a.push_back(*q);
        pw.emplace_back(a.back());
    }
    return WittVector<R>(std::move(a));
}

/// Series form prod_i (1 - a_i t^i)^{-1} through degree n.
template <typename R>
TruncatedSeries<R> to_series(const WittVector<R> &w, const std::string &var = "t")
{
    const std::size_t n = w.length();
    auto s = TruncatedSeries<R>::constant(var, n, R(1));
    for (std::size_t i = 1; i <= n; ++i) {
        const R &a = w.coord(i);
        if (is_zero(a)) {
            continue;
        }
        TruncatedSeries<R> geo(var, n);
        R pw(1);
        for (std::size_t k = 0; k * i <= n; ++k) {
            geo.set(k * i, pw);
            pw = pw * a;
        }
        s = s * geo;
    }
    return s;
}

/// Read coordinates off a series 1 + O(t) by peeling factors (1 - a_i t^i)^{-1}.
template <typename R>
WittVector<R> from_series(const TruncatedSeries<R> &s)
{
    if (s.order() < 1) {
        throw domain_error("series must be known at least through degree 1");
    }
    if (!is_one(s[0])) {
        throw domain_error("Witt vectors are series with constant term 1");
    }
    const std::size_t n = s.order();
    std::vector<R> c = s.coeffs();
    std::vector<R> a(n, R(0));
    for (std::size_t i = 1; i <= n; ++i) {
        a[i - 1] = c[i];
        if (is_zero(a[i - 1])) {
            continue;
        }
        // c <- c * (1 - a_i t^i)
        for (std::size_t k = n; k >= i; --k) {
            if (!is_zero(c[k - i])) {
                c[k] -= a[i - 1] * c[k - i];
            }
        }
    }
    return WittVector<R>(std::move(a));
}

/// Witt addition: multiplication of the series forms.
template <typename R>
WittVector<R> witt_add(const WittVector<R> &u, const WittVector<R> &v)
{
    detail::check_lengths(u, v);
    return from_series(to_series(u) * to_series(v));
}

template <typename R>
WittVector<R> witt_neg(const WittVector<R> &u)
{
    return from_series(series_inverse(to_series(u)));
}

template <typename R>
WittVector<R> witt_sub(const WittVector<R> &u, const WittVector<R> &v)
{
    return witt_add(u, witt_neg(v));
}

namespace detail
{

template <typename R>
WittVector<R> from_ghost_or_defect(const GhostVector<R> &g, const char *op)
{
    try {
        return from_ghost(g);
    } catch (const integrality_failure &e) {
        throw invariant_violation(std::string(op) + " produced a non-integral ghost vector: " + e.what());
    }
}

} // namespace detail

/// Witt product: entrywise product of ghost vectors, pulled back.
template <typename R>
WittVector<R> witt_mul(const WittVector<R> &u, const WittVector<R> &v)
{
    detail::check_lengths(u, v);
    const auto gu = to_ghost(u);
    const auto gv = to_ghost(v);
    std::vector<R> g(u.length());
    for (std::size_t k = 0; k < g.size(); ++k) {
        g[k] = gu.entries()[k] * gv.entries()[k];
    }
    return detail::from_ghost_or_defect(GhostVector<R>(std::move(g)), "witt_mul");
}

/// Multiplication by an integer m (m-fold Witt sum).
template <typename R>
WittVector<R> witt_scale(long m, const WittVector<R> &u)
{
    const auto gu = to_ghost(u);
    std::vector<R> g(u.length());
    for (std::size_t k = 0; k < g.size(); ++k) {
        g[k] = R(m) * gu.entries()[k];
    }
    return detail::from_ghost_or_defect(GhostVector<R>(std::move(g)), "witt_scale");
}

/// F_m: ghost(result)_j = ghost(w)_{mj}. Output length defaults to floor(n/m).
template <typename R>
WittVector<R> witt_frobenius(std::size_t m, const WittVector<R> &w, std::optional<std::size_t> out_length = {})
{
    if (m == 0) {
        throw domain_error("Frobenius index must be positive");
    }
    const std::size_t k = out_length.value_or(w.length() / m);
    if (k == 0 || m * k > w.length()) {
        throw insufficient_truncation("F_" + std::to_string(m) + " to length " + std::to_string(k)
                                      + " needs input length " + std::to_string(m * std::max<std::size_t>(k, 1))
                                      + ", got " + std::to_string(w.length()));
    }
    // Only ghost entries at multiples of m are needed.
    const auto g = to_ghost(witt_truncate(w, m * k));
    std::vector<R> out(k);
    for (std::size_t j = 1; j <= k; ++j) {
        out[j - 1] = g.entry(m * j);
    }
    return detail::from_ghost_or_defect(GhostVector<R>(std::move(out)), "witt_frobenius");
}

/// V_m: substitute t -> t^m. Known through length m*n + m - 1, the default.
template <typename R>
WittVector<R> witt_verschiebung(std::size_t m, const WittVector<R> &w, std::optional<std::size_t> out_length = {})
{
    if (m == 0) {
        throw domain_error("Verschiebung index must be positive");
    }
    const std::size_t full = m * w.length() + m - 1;
    const std::size_t len = out_length.value_or(full);
    if (len == 0 || len > full) {
        throw insufficient_truncation("V_" + std::to_string(m) + " of a length-" + std::to_string(w.length())
                                      + " vector is known only through length " + std::to_string(full));
    }
    std::vector<R> out(len, R(0));
    for (std::size_t i = 1; i * m <= len; ++i) {
        out[i * m - 1] = w.coord(i);
    }
    return WittVector<R>(std::move(out));
}

template <typename R>
WittVector<R> witt_truncate(const WittVector<R> &w, std::size_t k)
{
    if (k == 0 || k > w.length()) {
        throw domain_error("cannot truncate a length-" + std::to_string(w.length()) + " Witt vector to length "
                           + std::to_string(k));
    }
    return WittVector<R>(std::vector<R>(w.coords().begin(), w.coords().begin() + k));
}

} // namespace wittkit

#endif

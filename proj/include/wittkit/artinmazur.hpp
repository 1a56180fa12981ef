#ifndef WITTKIT_ARTINMAZUR_HPP
#define WITTKIT_ARTINMAZUR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <wittkit/errors.hpp>
#include <wittkit/fgl.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>
#include <wittkit/polynomial_io.hpp>

namespace wittkit
{

/// Complete intersection P_1 = ... = P_s = 0 in P^N over Z[param], with
/// deg P_1 + ... + deg P_s = N + 1.
///
/// Only the degree condition is checked. Regularity of the sequence and
/// smoothness of the fibres are assumed; logarithms computed from a family
/// that violates them carry no meaning.
class CompleteIntersectionFamily
{
public:
    CompleteIntersectionFamily(std::string name, std::vector<std::string> coordinates,
                               std::vector<IntPolynomial> equations, std::string parameter = "x")
        : m_name(std::move(name)), m_coords(std::move(coordinates)), m_param(std::move(parameter))
    {
        if (m_coords.size() < 2) {
            throw domain_error("projective space needs at least two coordinates");
        }
        if (equations.empty()) {
            throw domain_error("a complete intersection needs at least one equation");
        }
        auto all = m_coords;
        all.push_back(m_param);
        for (auto &p : equations) {
            m_equations.push_back(p.with_variables(all));
        }
        for (const auto &p : m_equations) {
            m_degrees.push_back(homogeneous_degree(p));
        }
        const auto total = std::accumulate(m_degrees.begin(), m_degrees.end(), std::size_t{0});
        if (total != m_coords.size()) {
            throw domain_error("degree condition violated: degrees sum to " + std::to_string(total)
                               + " but N + 1 = " + std::to_string(m_coords.size()));
        }
    }

    const std::string &name() const noexcept
    {
        return m_name;
    }
    const std::vector<std::string> &coordinates() const noexcept
    {
        return m_coords;
    }
    const std::string &parameter() const noexcept
    {
        return m_param;
    }
    const std::vector<IntPolynomial> &equations() const noexcept
    {
        return m_equations;
    }
    const std::vector<std::size_t> &degrees() const noexcept
    {
        return m_degrees;
    }
    std::size_t ambient_dimension() const noexcept
    {
        return m_coords.size() - 1;
    }
    // d = N - s
    std::size_t dimension() const noexcept
    {
        return ambient_dimension() - m_equations.size();
    }

private:
    std::size_t homogeneous_degree(const IntPolynomial &p) const
    {
        if (p.is_zero()) {
            throw domain_error("zero equation in family '" + m_name + "'");
        }
        std::optional<std::size_t> deg;
        for (const auto &[e, c] : p.terms()) {
            std::size_t d = 0;
            for (std::size_t i = 0; i < m_coords.size(); ++i) {
                d += e[i];
            }
            if (deg && *deg != d) {
                throw domain_error("equation " + to_text(p) + " is not homogeneous in the coordinates");
            }
            deg = d;
        }
        return *deg;
    }

    std::string m_name;
    std::vector<std::string> m_coords;
    std::string m_param;
    std::vector<IntPolynomial> m_equations;
    std::vector<std::size_t> m_degrees;
};

/// a_m = coefficient of (Z_0 ... Z_N)^{m-1} in (P_1 ... P_s)^{m-1}, m = 1..M.
///
/// One pass builds (P_1 ... P_s)^k for k = 0..M-1, discarding every partial
/// monomial with a coordinate exponent above M-1 (exponents only grow).
inline Logarithm am_logarithm(const CompleteIntersectionFamily &f, std::size_t M)
{
    if (M == 0) {
        throw domain_error("m_max must be at least 1");
    }
    const auto ncoord = f.coordinates().size();
    const auto bound = static_cast<std::uint32_t>(M - 1);
    IntPolynomial product = f.equations().front();
    for (std::size_t i = 1; i < f.equations().size(); ++i) {
        product = product * f.equations()[i];
    }
    const auto &vars = product.variables();
    const std::size_t pidx = product.index_of(f.parameter());

    using exponent = IntPolynomial::exponent_type;
    std::map<exponent, Integer> state;
    state.emplace(exponent(vars.size(), 0), Integer(1));

    std::vector<IntPolynomial> coeffs;
    coeffs.reserve(M);
    const std::vector<std::string> param_vars{f.parameter()};
    for (std::size_t k = 0; k < M; ++k) {
        // read (Z_0 ... Z_N)^k
        IntPolynomial a(param_vars);
        for (const auto &[e, c] : state) {
            bool hit = true;
            for (std::size_t i = 0; i < ncoord && hit; ++i) {
                hit = e[i] == k;
            }
            if (hit) {
                a.add_term(exponent{pidx == IntPolynomial::npos ? 0u : e[pidx]}, c);
            }
        }
        coeffs.push_back(std::move(a));
        if (k + 1 == M) {
            break;
        }
        std::map<exponent, Integer> next;
        exponent e(vars.size());
        for (const auto &[es, cs] : state) {
            for (const auto &[ep, cp] : product.terms()) {
                bool keep = true;
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    e[i] = es[i] + ep[i];
                    if (i < ncoord && e[i] > bound) {
                        keep = false;
                        break;
                    }
                }
                if (!keep) {
                    continue;
                }
                auto [it, inserted] = next.try_emplace(e, cs * cp);
                if (!inserted) {
                    it->second += cs * cp;
                }
            }
        }
        std::erase_if(next, [](const auto &kv) { return is_zero(kv.second); });
        state = std::move(next);
    }
    return Logarithm(std::move(coeffs), "Z[x]");
}

struct FamilyCatalogEntry {
    std::string id;
    CompleteIntersectionFamily family;
    // Closed form a_m = sum_j sign^j (n j)! / (j!)^n * C(m-1, n j) * x^{n j}.
    unsigned closed_form_n;
    int closed_form_sign;
    // Fibres over the roots of this polynomial in x are singular.
    IntPolynomial singular_locus;

    std::size_t dimension() const noexcept
    {
        return family.dimension();
    }
    bool elliptic() const noexcept
    {
        return dimension() == 1;
    }
};

inline const std::vector<std::string> &builtin_family_ids()
{
    static const std::vector<std::string> ids{"hesse-cubic", "quartic-k3", "quintic-cy3"};
    return ids;
}

// Accepts the catalog ids and the short aliases hesse, quartic, quintic.
inline std::string resolve_family_id(const std::string &id)
{
    if (id == "hesse-cubic" || id == "hesse") {
        return "hesse-cubic";
    }
    if (id == "quartic-k3" || id == "quartic") {
        return "quartic-k3";
    }
    if (id == "quintic-cy3" || id == "quintic") {
        return "quintic-cy3";
    }
    throw unknown_family("unknown family '" + id + "' (known: hesse-cubic, quartic-k3, quintic-cy3)");
}

inline FamilyCatalogEntry builtin_family(const std::string &id)
{
    const auto rid = resolve_family_id(id);
    const std::vector<std::string> px{"x"};
    if (rid == "hesse-cubic") {
        std::vector<std::string> z{"X", "Y", "Z"};
        auto p = parse_polynomial<Integer>("x*(X^3+Y^3+Z^3)+X*Y*Z");
        return {rid, CompleteIntersectionFamily(rid, z, {p}), 3, 1,
                parse_polynomial<Integer>("x+27*x^4", px)};
    }
    if (rid == "quartic-k3") {
        std::vector<std::string> z{"W", "X", "Y", "Z"};
        auto p = parse_polynomial<Integer>("x*(W^4+X^4+Y^4+Z^4)+W*X*Y*Z");
        return {rid, CompleteIntersectionFamily(rid, z, {p}), 4, 1,
                parse_polynomial<Integer>("-x+256*x^5", px)};
    }
    std::vector<std::string> z{"Z0", "Z1", "Z2", "Z3", "Z4"};
    auto p = parse_polynomial<Integer>("Z0*Z1*Z2*Z3*Z4-x*(Z0^5+Z1^5+Z2^5+Z3^5+Z4^5)");
    return {rid, CompleteIntersectionFamily(rid, z, {p}), 5, -1, parse_polynomial<Integer>("-x+3125*x^6", px)};
}

/// Closed-form a_m for the built-in pencils.
inline IntPolynomial closed_form_coefficient(const FamilyCatalogEntry &entry, std::size_t m)
{
    const unsigned n = entry.closed_form_n;
    const std::vector<std::string> px{"x"};
    IntPolynomial a(px);
    for (unsigned long j = 0; n * j <= m - 1; ++j) {
        Integer multinomial = factorial(n * j) / ipow(factorial(j), n);
        Integer c = multinomial * binomial(m - 1, n * j);
        if (entry.closed_form_sign < 0 && j % 2 == 1) {
            c = -c;
        }
        a.add_term({static_cast<std::uint32_t>(n * j)}, c);
    }
    return a;
}

inline Logarithm closed_form_logarithm(const std::string &id, std::size_t M)
{
    if (M == 0) {
        throw domain_error("m_max must be at least 1");
    }
    const auto entry = builtin_family(id);
    std::vector<IntPolynomial> coeffs;
    coeffs.reserve(M);
    for (std::size_t m = 1; m <= M; ++m) {
        coeffs.push_back(closed_form_coefficient(entry, m));
    }
    return Logarithm(std::move(coeffs), "Z[x]");
}

} // namespace wittkit

#endif

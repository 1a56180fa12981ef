#ifndef WITTKIT_ORDINARITY_HPP
#define WITTKIT_ORDINARITY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <wittkit/artinmazur.hpp>
#include <wittkit/errors.hpp>
#include <wittkit/fgl.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>

namespace wittkit
{

// P^2(F_31) has 993 points; the default admits every routine elliptic count.
inline constexpr std::uint64_t default_point_budget = 1024;
inline constexpr std::uint64_t max_hasse_witt_prime = 2000;

namespace detail
{

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1u) {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    return r;
}

inline void check_odd_prime(std::uint64_t p)
{
    if (p == 2) {
        throw domain_error("p = 2 is excluded: 2 is inverted in the base ring");
    }
    if (!is_prime(p)) {
        throw domain_error(std::to_string(p) + " is not prime");
    }
}

// Polynomial with coefficients reduced mod p, evaluated at F_p points.
class fp_evaluator
{
public:
    fp_evaluator(const IntPolynomial &h, std::uint64_t p) : m_p(p)
    {
        for (const auto &[e, c] : h.terms()) {
            const auto r = reduce_mod(c, p);
            if (r != 0) {
                m_terms.emplace_back(r, e);
            }
        }
    }

    std::uint64_t operator()(const std::vector<std::uint64_t> &point) const
    {
        std::uint64_t acc = 0;
        for (const auto &[c, e] : m_terms) {
            std::uint64_t t = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] != 0) {
                    t = mulmod(t, powmod(point[i], e[i], m_p), m_p);
                }
            }
            acc = (acc + t) % m_p;
        }
        return acc;
    }

private:
    std::uint64_t m_p;
    std::vector<std::pair<std::uint64_t, IntPolynomial::exponent_type>> m_terms;
};

} // namespace detail

/// Value of a one-variable integer polynomial at lambda in F_p.
inline std::uint64_t eval_mod(const IntPolynomial &f, std::uint64_t lambda, std::uint64_t p)
{
    if (f.variables().size() > 1) {
        throw variable_mismatch("eval_mod expects a polynomial in at most one variable");
    }
    std::vector<std::uint64_t> pt{lambda % p};
    if (f.variables().empty()) {
        return reduce_mod(f.constant_term(), p);
    }
    return detail::fp_evaluator(f, p)(pt);
}

/// a_p(x) mod p from a logarithm with M >= p.
inline IntPolynomial hasse_witt_poly(const Logarithm &log, std::uint64_t p)
{
    detail::check_odd_prime(p);
    return poly_reduce_mod(log.coeff(p), Integer(static_cast<unsigned long>(p)));
}

/// a_p(x) mod p for a catalog family, via the closed form.
inline IntPolynomial hasse_witt_poly(const std::string &id, std::uint64_t p)
{
    detail::check_odd_prime(p);
    if (p > max_hasse_witt_prime) {
        throw domain_error("p = " + std::to_string(p) + " exceeds the supported bound "
                           + std::to_string(max_hasse_witt_prime));
    }
    const auto entry = builtin_family(id);
    return poly_reduce_mod(closed_form_coefficient(entry, p), Integer(static_cast<unsigned long>(p)));
}

inline bool is_singular_fiber(const FamilyCatalogEntry &entry, std::uint64_t lambda, std::uint64_t p)
{
    return eval_mod(entry.singular_locus, lambda, p) == 0;
}

/// { lambda in F_p : fibre smooth and a_p(lambda) = 0 }, ascending.
inline std::vector<std::uint64_t> nonordinary_locus(const std::string &id, std::uint64_t p)
{
    const auto entry = builtin_family(id);
    const auto ap = hasse_witt_poly(id, p);
    std::vector<std::uint64_t> out;
    for (std::uint64_t l = 0; l < p; ++l) {
        if (!is_singular_fiber(entry, l, p) && eval_mod(ap, l, p) == 0) {
            out.push_back(l);
        }
    }
    return out;
}

/// Number of zeros of the homogeneous h in P^N(F_p), N + 1 = number of
/// variables of h, by enumerating representatives whose first nonzero
/// coordinate is 1.
inline std::uint64_t point_count_projective(const IntPolynomial &h, std::uint64_t p,
                                            std::uint64_t budget = default_point_budget)
{
    if (!is_prime(p)) {
        throw domain_error(std::to_string(p) + " is not prime");
    }
    const std::size_t nv = h.variables().size();
    if (nv == 0) {
        throw domain_error("point counting needs at least one coordinate");
    }
    // (p^{N+1} - 1) / (p - 1) points in total
    std::uint64_t total = 0;
    std::uint64_t pw = 1;
    for (std::size_t i = 0; i < nv; ++i) {
        total += pw;
        if (total > budget) {
            throw budget_exceeded("P^" + std::to_string(nv - 1) + "(F_" + std::to_string(p)
                                  + ") has more points than the budget " + std::to_string(budget));
        }
        pw *= p;
    }
    const detail::fp_evaluator eval(h, p);
    std::uint64_t count = 0;
    std::vector<std::uint64_t> pt(nv);
    for (std::size_t lead = 0; lead < nv; ++lead) {
        std::uint64_t combos = 1;
        for (std::size_t i = lead + 1; i < nv; ++i) {
            combos *= p;
        }
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::fill(pt.begin(), pt.end(), 0);
            pt[lead] = 1;
            auto rest = idx;
            for (std::size_t i = nv; i-- > lead + 1;) {
                pt[i] = rest % p;
                rest /= p;
            }
            if (eval(pt) == 0) {
                ++count;
            }
        }
    }
    return count;
}

enum class Verdict { ordinary, supersingular, singular };

inline const char *to_string(Verdict v)
{
    switch (v) {
        case Verdict::ordinary:
            return "ordinary";
        case Verdict::supersingular:
            return "supersingular";
        case Verdict::singular:
            return "singular";
    }
    return "?";
}

struct FiberClassification {
    std::uint64_t p;
    std::uint64_t lambda;
    Verdict verdict;
    std::optional<std::uint64_t> point_count;
    std::optional<std::int64_t> trace;
};

/// Oracle verdict for an elliptic fibre, independent of a_p: singular on the
/// declared locus, else supersingular iff the Frobenius trace p + 1 - #E(F_p)
/// is divisible by p.
inline FiberClassification classify_elliptic_fiber(const std::string &id, std::uint64_t lambda, std::uint64_t p,
                                                   std::uint64_t budget = default_point_budget)
{
    detail::check_odd_prime(p);
    const auto entry = builtin_family(id);
    if (!entry.elliptic()) {
        throw domain_error("family '" + entry.id + "' is not a family of elliptic curves");
    }
    lambda %= p;
    if (is_singular_fiber(entry, lambda, p)) {
        return {p, lambda, Verdict::singular, std::nullopt, std::nullopt};
    }
    const auto &fam = entry.family;
    const auto fibre = fam.equations().front()
                           .substitute(fam.parameter(), Integer(static_cast<unsigned long>(lambda)))
                           .with_variables(fam.coordinates());
    const auto count = point_count_projective(fibre, p, budget);
    const auto trace = static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(count);
    const auto v = trace % static_cast<std::int64_t>(p) == 0 ? Verdict::supersingular : Verdict::ordinary;
    return {p, lambda, v, count, trace};
}

struct FiberRow {
    std::uint64_t p;
    std::uint64_t lambda;
    std::uint64_t a_p_value;
    // ordinary / supersingular / singular for elliptic families,
    // hw-unit / hw-zero / singular otherwise.
    std::string verdict;
    std::optional<std::string> oracle_verdict;
    std::optional<bool> agree;
};

struct PrimeReport {
    std::uint64_t p;
    IntPolynomial hasse_witt;
    std::vector<std::uint64_t> nonordinary;
    std::vector<FiberRow> rows;
    // Set when the oracle ran: true iff every smooth fibre agreed.
    std::optional<bool> oracle_match;
};

struct OrdinarityReport {
    std::string family;
    std::uint64_t prime_bound;
    bool with_oracle;
    std::vector<PrimeReport> primes;
};

struct ScanOptions {
    unsigned threads = 1;
    std::uint64_t budget = default_point_budget;
};

inline PrimeReport scan_prime(const FamilyCatalogEntry &entry, std::uint64_t p, bool with_oracle,
                              std::uint64_t budget)
{
    PrimeReport r{p, hasse_witt_poly(entry.id, p), {}, {}, std::nullopt};
    bool all_agree = true;
    for (std::uint64_t l = 0; l < p; ++l) {
        FiberRow row{p, l, eval_mod(r.hasse_witt, l, p), "", std::nullopt, std::nullopt};
        if (is_singular_fiber(entry, l, p)) {
            row.verdict = "singular";
        } else if (entry.elliptic()) {
            row.verdict = row.a_p_value == 0 ? "supersingular" : "ordinary";
        } else {
            row.verdict = row.a_p_value == 0 ? "hw-zero" : "hw-unit";
        }
        if (row.verdict != "singular" && row.a_p_value == 0) {
            r.nonordinary.push_back(l);
        }
        if (with_oracle) {
            const auto fc = classify_elliptic_fiber(entry.id, l, p, budget);
            row.oracle_verdict = to_string(fc.verdict);
            row.agree = *row.oracle_verdict == row.verdict;
            all_agree = all_agree && *row.agree;
        }
        r.rows.push_back(std::move(row));
    }
    if (with_oracle) {
        r.oracle_match = all_agree;
    }
    return r;
}

/// Hasse-Witt loci for every odd prime p <= N, optionally cross-checked
/// against point counts. Output is sorted by p then lambda for any thread count.
inline OrdinarityReport ordinarity_scan(const std::string &id, std::uint64_t N, bool with_oracle,
                                        ScanOptions opts = {})
{
    if (N < 3) {
        throw domain_error("prime bound must be at least 3");
    }
    const auto entry = builtin_family(id);
    if (with_oracle && !entry.elliptic()) {
        throw domain_error("no ordinariness oracle for '" + entry.id
                           + "': Hasse-Witt nonvanishing is not a verdict beyond elliptic curves");
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 3; p <= N; p += 2) {
        if (is_prime(p)) {
            primes.push_back(p);
        }
    }
    if (primes.back() > max_hasse_witt_prime) {
        throw domain_error("prime bound exceeds the supported bound " + std::to_string(max_hasse_witt_prime));
    }
    std::vector<std::optional<PrimeReport>> slots(primes.size());
    std::vector<std::exception_ptr> errors(primes.size());
    const unsigned nthreads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(primes.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < primes.size(); i += nthreads) {
                    try {
                        slots[i] = scan_prime(entry, primes[i], with_oracle, opts.budget);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    OrdinarityReport report{entry.id, N, with_oracle, {}};
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        report.primes.push_back(std::move(*slots[i]));
    }
    return report;
}

struct CongruenceResult {
    bool pass;
    std::uint64_t p;
    unsigned nu;
    // a_{p^nu} mod p and a_p * a_{p^{nu-1}}^p mod p
    IntPolynomial lhs;
    IntPolynomial rhs;
    // lhs - rhs mod p; zero on pass
    IntPolynomial difference;
};

/// a_{p^nu} == a_p * (a_{p^{nu-1}})^p in F_p[x].
inline CongruenceResult frobenius_power_congruence(const Logarithm &log, std::uint64_t p, unsigned nu)
{
    if (!is_prime(p)) {
        throw domain_error(std::to_string(p) + " is not prime");
    }
    if (nu < 2) {
        throw domain_error("the prime-power congruence needs nu >= 2");
    }
    std::uint64_t q = 1;
    for (unsigned i = 0; i < nu; ++i) {
        q *= p;
        if (q > log.truncation()) {
            throw insufficient_truncation("congruence at p^nu = " + std::to_string(q) + " needs M >= p^nu, have M = "
                                          + std::to_string(log.truncation()));
        }
    }
    const Integer P(static_cast<unsigned long>(p));
    const auto lhs = poly_reduce_mod(log.coeff(q), P);
    const auto prev = poly_reduce_mod(log.coeff(q / p), P);
    const auto rhs = poly_reduce_mod(poly_reduce_mod(log.coeff(p), P) * prev.pow(p), P);
    auto diff = poly_reduce_mod(lhs - rhs, P);
    const bool pass = diff.is_zero();
    return {pass, p, nu, lhs, rhs, std::move(diff)};
}

} // namespace wittkit

#endif

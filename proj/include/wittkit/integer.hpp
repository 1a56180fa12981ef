#ifndef WITTKIT_INTEGER_HPP
#define WITTKIT_INTEGER_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include <wittkit/errors.hpp>

namespace wittkit
{

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Integer &a)
{
    return sgn(a) == 0;
}

inline bool is_zero(const Rational &a)
{
    return sgn(a) == 0;
}

inline bool is_one(const Integer &a)
{
    return a == 1;
}

inline bool is_one(const Rational &a)
{
    return a == 1;
}

// Canonical residue in [0, n).
inline Integer mod_floor(const Integer &a, const Integer &n)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Integer ipow(const Integer &base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    if (k > n) {
        return 0;
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Rational make_rational(const Integer &num, const Integer &den)
{
    if (is_zero(den)) {
        throw domain_error("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Exact quotient a / k, or nothing when k does not divide a.
inline std::optional<Integer> divide_exact(const Integer &a, const Integer &k)
{
    if (mpz_divisible_p(a.get_mpz_t(), k.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), k.get_mpz_t());
    return q;
}

inline std::optional<Integer> to_integer(const Rational &q)
{
    if (q.get_den() != 1) {
        return std::nullopt;
    }
    return Integer(q.get_num());
}

inline std::string to_string(const Integer &a)
{
    return a.get_str();
}

inline std::string to_string(const Rational &q)
{
    return q.get_str();
}

inline Integer parse_integer(const std::string &s)
{
    Integer r;
    if (s.empty() || r.set_str(s, 10) != 0) {
        throw malformed_input("not a decimal integer: '" + s + "'");
    }
    return r;
}

inline Rational parse_rational(const std::string &s)
{
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_integer(s));
    }
    return make_rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
}

// Small-prime helpers shared by the finite-field code.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline std::uint64_t reduce_mod(const Integer &a, std::uint64_t p)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
    return r.get_ui();
}

} // namespace wittkit

#endif

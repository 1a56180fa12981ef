#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <wittkit/polynomial.hpp>
#include <wittkit/polynomial_io.hpp>
#include <wittkit/series.hpp>

#include "test_util.hpp"

using namespace wittkit;
using wittkit::testing::random_big;
using wittkit::testing::random_poly;

namespace
{

IntPolynomial P(const std::string &s, const std::vector<std::string> &vars = {})
{
    return parse_polynomial<Integer>(s, vars);
}

RatPolynomial Q(const std::string &s)
{
    return parse_polynomial<Rational>(s);
}

RatSeries rs(std::vector<std::string> cs)
{
    std::vector<RatPolynomial> c;
    for (auto &s : cs) {
        c.push_back(Q(s));
    }
    return RatSeries("t", std::move(c));
}

// Dense oracle: expand a product of polynomials by enumerating every choice
// of one term per factor.
using term_list = std::vector<std::pair<Integer, std::vector<std::uint32_t>>>;

term_list terms_of(const IntPolynomial &p)
{
    term_list out;
    for (const auto &[e, c] : p.terms()) {
        out.emplace_back(c, e);
    }
    return out;
}

Integer dense_coefficient(const std::vector<term_list> &factors, const std::vector<std::uint32_t> &target)
{
    Integer acc = 0;
    std::vector<std::size_t> idx(factors.size(), 0);
    while (true) {
        Integer c = 1;
        std::vector<std::uint32_t> e(target.size(), 0);
        for (std::size_t f = 0; f < factors.size(); ++f) {
            c *= factors[f][idx[f]].first;
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] += factors[f][idx[f]].second[i];
            }
        }
        if (e == target) {
            acc += c;
        }
        std::size_t f = 0;
        while (f < factors.size() && ++idx[f] == factors[f].size()) {
            idx[f] = 0;
            ++f;
        }
        if (f == factors.size()) {
            return acc;
        }
    }
}

} // namespace

TEST(Polynomial, CanonicalFormDropsZeros)
{
    auto p = P("x+y-x");
    EXPECT_EQ(p.size(), 1u);
    EXPECT_EQ(p, P("y"));
    EXPECT_TRUE((P("x") - P("x")).is_zero());
}

TEST(Polynomial, EqualityAcrossVariableOrders)
{
    EXPECT_EQ(P("x+2*y", {"x", "y"}), P("x+2*y", {"y", "x"}));
    EXPECT_EQ(P("3"), P("3", {"x"}));
}

TEST(Polynomial, DuplicateVariablesRejected)
{
    EXPECT_THROW(IntPolynomial(std::vector<std::string>{"x", "x"}), variable_mismatch);
}

TEST(Polynomial, TextGrammar)
{
    EXPECT_EQ(to_text(P("4*x^3+1")), "1+4*x^3");
    EXPECT_EQ(to_text(P("-75000*x^5")), "-75000*x^5");
    EXPECT_EQ(to_text(P("1-x^3")), "1-x^3");
    EXPECT_EQ(to_text(IntPolynomial()), "0");
    EXPECT_EQ(to_text(Q("t^2+1/2*t^2")), "3/2*t^2");
    EXPECT_EQ(to_text(P("(X+Y)^2", {"X", "Y"})), "Y^2+2*X*Y+X^2");
    EXPECT_THROW(P("1/2*x"), malformed_input);
    EXPECT_THROW(P("x+"), malformed_input);
    EXPECT_THROW(P("x y"), malformed_input);
    EXPECT_THROW(P("z", {"x"}), variable_mismatch);
}

TEST(Polynomial, TextRoundTripOnRandomInputs)
{
    std::mt19937_64 rng(11);
    const std::vector<std::string> vars{"a", "b", "c"};
    for (int i = 0; i < 200; ++i) {
        auto p = random_poly(rng, vars, 6, 8, 1000);
        EXPECT_EQ(parse_polynomial<Integer>(to_text(p), vars), p) << to_text(p);
    }
}

TEST(CoefficientOf, BinomialSquare)
{
    auto p = P("(X+Y)^2");
    EXPECT_EQ(coefficient_of(p, {"X", "Y"}, {1, 1}), IntPolynomial(2));
}

TEST(CoefficientOf, KeepsParameter)
{
    auto p = P("X*Y*Z+x*(X^3+Y^3+Z^3)");
    EXPECT_EQ(coefficient_of(p, {"X", "Y", "Z"}, {1, 1, 1}), IntPolynomial(1));
    EXPECT_EQ(coefficient_of(p, {"X", "Y", "Z"}, {3, 0, 0}), P("x"));
    EXPECT_EQ(coefficient_of(p, {"X"}, {0}), P("x*(Y^3+Z^3)"));
}

TEST(CoefficientOf, HesseSquareAgainstDenseExpansion)
{
    const std::vector<std::string> vars{"X", "Y", "Z", "x"};
    auto p = P("X*Y*Z+x*(X^3+Y^3+Z^3)", vars);
    auto sq = p * p;
    // coefficient of X^2 Y^2 Z^2 as a polynomial in x: read each x-degree from the oracle
    auto c = coefficient_of(sq, {"X", "Y", "Z"}, {2, 2, 2});
    const auto t = terms_of(p);
    for (std::uint32_t d = 0; d <= 2; ++d) {
        EXPECT_EQ(c.coefficient({d}), dense_coefficient({t, t}, {2, 2, 2, d}));
    }
    EXPECT_EQ(c, IntPolynomial(1));
}

TEST(CoefficientOf, Errors)
{
    auto p = P("X+Y");
    EXPECT_THROW(coefficient_of(p, {"W"}, {1}), variable_mismatch);
    EXPECT_THROW(coefficient_of(p, {"X", "Y"}, {1}), variable_mismatch);
    EXPECT_EQ(coefficient_of(p, {"X"}, {2}), IntPolynomial(0));
}

TEST(CoefficientOf, AgreesWithDenseExpansionOnRandomProducts)
{
    std::mt19937_64 rng(5);
    const std::vector<std::string> vars{"a", "b", "c"};
    for (int i = 0; i < 60; ++i) {
        std::vector<IntPolynomial> fs;
        std::vector<term_list> ts;
        IntPolynomial prod = IntPolynomial(1).with_variables(vars);
        for (int f = 0; f < 3; ++f) {
            auto q = random_poly(rng, vars, 4, 4, 9);
            if (q.is_zero()) {
                q = IntPolynomial(1).with_variables(vars);
            }
            prod = prod * q;
            ts.push_back(terms_of(q));
        }
        ASSERT_LE(prod.total_degree(), 12u);
        std::uniform_int_distribution<std::uint32_t> d(0, 4);
        for (int k = 0; k < 5; ++k) {
            std::vector<std::uint32_t> target{d(rng), d(rng), d(rng)};
            auto got = coefficient_of(prod, {"a", "b", "c"}, {target[0], target[1], target[2]});
            EXPECT_EQ(got, IntPolynomial(dense_coefficient(ts, target)));
        }
    }
}

TEST(PolyReduceMod, Examples)
{
    EXPECT_EQ(poly_reduce_mod(P("1+24*x^3"), 5), P("1+4*x^3"));
    EXPECT_TRUE(poly_reduce_mod(P("-75000*x^5"), 2).is_zero());
    EXPECT_TRUE(poly_reduce_mod(P("17+3*x-5*y^2"), 1).is_zero());
    EXPECT_EQ(poly_reduce_mod(P("-1-7*x"), 5), P("4+3*x"));
    EXPECT_THROW(poly_reduce_mod(P("x"), 0), domain_error);
}

TEST(Polynomial, RingAxiomsOnRandomInputs)
{
    std::mt19937_64 rng(2024);
    const std::vector<std::string> vars{"w", "x", "y", "z"};
    for (int i = 0; i < 150; ++i) {
        auto gen = [&] {
            auto p = random_poly(rng, vars, 8, 6, 1);
            IntPolynomial q(vars);
            for (const auto &[e, c] : p.terms()) {
                q.add_term(e, random_big(rng));
            }
            return q;
        };
        const auto a = gen(), b = gen(), c = gen();
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a * IntPolynomial(1), a);
    }
}

TEST(Series, InverseExamples)
{
    EXPECT_EQ(series_inverse(rs({"1", "-1", "0", "0"})), rs({"1", "1", "1", "1"}));
    EXPECT_EQ(series_inverse(rs({"1", "-a", "0"})), rs({"1", "a", "a^2"}));
    // 1/((1-t)(1-t^2)) counts partitions into parts 1 and 2: floor(n/2)+1
    auto s = rs({"1", "-1", "-1", "1", "0"});
    auto inv = series_inverse(s);
    for (std::size_t n = 0; n <= 4; ++n) {
        EXPECT_EQ(inv[n], RatPolynomial(Rational(static_cast<long>(n / 2 + 1))));
    }
    EXPECT_THROW(series_inverse(rs({"2", "1"})), domain_error);
}

TEST(Series, ComposeExamples)
{
    auto id = RatSeries::identity("t", 4);
    auto s = rs({"0", "3", "1/2", "a", "-7"});
    EXPECT_EQ(series_compose(id, s), s);
    EXPECT_EQ(series_compose(rs({"0", "0", "1", "0", "0"}), rs({"0", "1", "1", "0", "0"})),
              rs({"0", "0", "1", "2", "1"}));
    EXPECT_EQ(series_compose(rs({"0", "1", "1/2", "1/3", "1/4"}), rs({"0", "0", "1", "0", "0"})),
              rs({"0", "0", "1", "0", "1/2"}));
    EXPECT_THROW(series_compose(id, rs({"1", "1"})), domain_error);
}

TEST(Series, ReversionExamples)
{
    auto id = RatSeries::identity("t", 5);
    EXPECT_EQ(series_reversion(id), id);
    EXPECT_EQ(series_reversion(rs({"0", "1", "1/2", "1/3", "1/4"})), rs({"0", "1", "-1/2", "1/6", "-1/24"}));
    EXPECT_EQ(series_reversion(rs({"0", "1", "1", "0"})), rs({"0", "1", "-1", "2"}));
    EXPECT_THROW(series_reversion(rs({"0", "2", "1"})), domain_error);
    EXPECT_THROW(series_reversion(rs({"1", "1", "1"})), domain_error);
}

TEST(Series, MixingTakesMinimumOrder)
{
    auto a = rs({"1", "1", "1", "1"});
    auto b = rs({"1", "2"});
    EXPECT_EQ((a + b).order(), 1u);
    EXPECT_EQ((a * b).order(), 1u);
    EXPECT_THROW(a[4], insufficient_truncation);
    EXPECT_THROW((void)(a + RatSeries("u", 3)), variable_mismatch);
}

TEST(Series, RoundTripPropertiesOnRandomSeries)
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<unsigned long> den(1, 5);
    std::uniform_int_distribution<std::size_t> ord(2, 16);
    for (int i = 0; i < 40; ++i) {
        const std::size_t T = ord(rng);
        RatSeries s("t", T);
        s.set(1, RatPolynomial(Rational(1)));
        for (std::size_t k = 2; k <= T; ++k) {
            s.set(k, RatPolynomial(make_rational(num(rng), den(rng))));
        }
        const auto r = series_reversion(s);
        EXPECT_EQ(series_compose(s, r), RatSeries::identity("t", T));
        EXPECT_EQ(series_compose(r, s), RatSeries::identity("t", T));
        EXPECT_EQ(series_reversion(r), s);

        RatSeries u = s;
        u.set(0, RatPolynomial(Rational(1)));
        EXPECT_EQ(series_inverse(series_inverse(u)), u);
        EXPECT_EQ(u * series_inverse(u), RatSeries::constant("t", T, RatPolynomial(Rational(1))));
    }
}

TEST(Series, ReversionWithPolynomialCoefficients)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        RatSeries s("t", 8);
        s.set(1, RatPolynomial(Rational(1)));
        for (std::size_t k = 2; k <= 8; ++k) {
            s.set(k, to_rational(wittkit::testing::random_zx(rng, false)));
        }
        EXPECT_EQ(series_compose(s, series_reversion(s)), RatSeries::identity("t", 8));
    }
}

TEST(Series, SubstitutionsAndExp)
{
    auto s = rs({"0", "1", "2"});
    auto v = s.substitute_power(3);
    EXPECT_EQ(v.order(), 8u);
    EXPECT_EQ(v[3], Q("1"));
    EXPECT_EQ(v[6], Q("2"));
    EXPECT_EQ(s.scale_variable(Q("a")), rs({"0", "a", "2*a^2"}));
    // exp(-log(1-t)) = 1/(1-t)
    auto e = series_exp(rs({"0", "1", "1/2", "1/3", "1/4"}));
    EXPECT_EQ(e, rs({"1", "1", "1", "1", "1"}));
}

TEST(MultiSeries, ComposeIntoAndSubstitute)
{
    const std::vector<std::string> vars{"t1", "t2"};
    auto t1 = MultiSeries<RatPolynomial>::variable(vars, 0, 4);
    auto t2 = MultiSeries<RatPolynomial>::variable(vars, 1, 4);
    // (t1 + t2)^2 through degree 4 via outer = u^2
    auto sq = compose_into(rs({"0", "0", "1", "0", "0"}), t1 + t2);
    EXPECT_EQ(sq, (t1 + t2) * (t1 + t2));
    EXPECT_EQ(substitute(t1 * t2, {t2, t1}), t1 * t2);
    EXPECT_EQ((t1 * t1 * t1 * t1 * t1).terms().size(), 0u);
}

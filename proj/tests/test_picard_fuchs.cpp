#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <wittkit/artinmazur.hpp>
#include <wittkit/picard_fuchs.hpp>
#include <wittkit/polynomial_io.hpp>

#include "test_util.hpp"

using namespace wittkit;
using wittkit::testing::random_poly;

namespace
{

const std::vector<std::string> px{"x"};

IntPolynomial P(const std::string &s)
{
    return parse_polynomial<Integer>(s, px);
}

using Dense = std::vector<Integer>;

Dense dense(const IntPolynomial &f, std::size_t n)
{
    Dense d(n, Integer(0));
    const auto g = f.with_variables(px);
    for (const auto &[e, c] : g.terms()) {
        if (e[0] < n) {
            d[e[0]] = c;
        }
    }
    return d;
}

// L f = sum_k q_k * theta^k f with theta = x d/dx, dense, truncated to n terms.
Dense dense_apply(const ThetaOperator &L, const Dense &f)
{
    const std::size_t n = f.size();
    Dense out(n, Integer(0)), th = f;
    for (std::size_t k = 0; k <= L.order(); ++k) {
        const Dense q = dense(L.coefficient(k), n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; i + j < n; ++j) {
                out[i + j] += q[i] * th[j];
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            th[j] *= Integer(static_cast<unsigned long>(j));
        }
    }
    return out;
}

ThetaOperator random_operator(std::mt19937_64 &rng)
{
    std::vector<IntPolynomial> q;
    const std::size_t r = rng() % 4;
    for (std::size_t k = 0; k <= r; ++k) {
        q.push_back(random_poly(rng, px, 4, 3, 6));
    }
    q.back() += IntPolynomial(1);
    return ThetaOperator(q);
}

} // namespace

TEST(Operator, ExpandExamples)
{
    auto t2 = expand_operator({{Integer(1), 0, 2, {}}});
    EXPECT_EQ(t2.order(), 2u);
    EXPECT_EQ(t2.coefficient(2), IntPolynomial(1).with_variables(px));
    EXPECT_TRUE(t2.coefficient(0).is_zero());
    EXPECT_TRUE(t2.coefficient(1).is_zero());
    auto xt = expand_operator({{Integer(1), 1, 1, {}}});
    EXPECT_EQ(xt.coefficient(1), P("x"));
    EXPECT_TRUE(xt.coefficient(0).is_zero());
    auto q = expand_operator({{Integer(1), 5, 0, {1, 2, 3, 4}}});
    EXPECT_EQ(q.coefficients(), (std::vector<IntPolynomial>{P("24*x^5"), P("50*x^5"), P("35*x^5"), P("10*x^5"), P("x^5")}));
    // theta * x = x * (theta + 1)
    EXPECT_EQ(ThetaOperator::theta() * ThetaOperator::x_power(1),
              ThetaOperator::x_power(1) * (ThetaOperator::theta() + ThetaOperator::constant(Integer(1))));
    EXPECT_THROW(expand_operator({}), malformed_input);
}

TEST(Operator, ParseAndPrint)
{
    EXPECT_EQ(parse_operator("theta^4 - 5^5*x^5*(theta+1)*(theta+2)*(theta+3)*(theta+4)"), quintic_picard_fuchs());
    EXPECT_EQ(parse_operator("theta*x"), parse_operator("x*theta + x"));
    EXPECT_EQ(parse_operator("theta^2"), expand_operator({{Integer(1), 0, 2, {}}}));
    EXPECT_EQ(to_text(parse_operator("x*theta")), "(x)*theta");
    EXPECT_EQ(to_text(ThetaOperator()), "0");
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
        auto L = random_operator(rng);
        EXPECT_EQ(parse_operator(to_text(L)), L);
    }
    EXPECT_THROW(parse_operator("theta +"), malformed_input);
    EXPECT_THROW(parse_operator("y*theta"), malformed_input);
}

TEST(Operator, ApplyExamples)
{
    auto t4 = expand_operator({{Integer(1), 0, 4, {}}});
    for (std::uint32_t n = 0; n <= 6; ++n) {
        auto xn = IntPolynomial::monomial(px, {n}, Integer(1));
        EXPECT_EQ(apply_operator(t4, xn), IntPolynomial::monomial(px, {n}, ipow(Integer(n), 4)));
    }
    const auto L = quintic_picard_fuchs();
    EXPECT_EQ(apply_operator(L, IntPolynomial(1)), P("-75000*x^5"));
    EXPECT_EQ(L.coefficient(0), P("-75000*x^5"));
    auto s = apply_operator(L, TruncatedSeries<Integer>("x", {Integer(1), Integer(0), Integer(0), Integer(0)}));
    EXPECT_EQ(s.order(), 3u);
    EXPECT_TRUE(s.valuation() > 3);
}

TEST(Operator, ApplyMatchesDenseOracle)
{
    std::mt19937_64 rng(32);
    for (int i = 0; i < 40; ++i) {
        auto L = random_operator(rng);
        auto f = random_poly(rng, px, 10, 6, 20);
        const auto got = apply_operator(L, f);
        const std::size_t n = 10 + 4 + 1;
        EXPECT_EQ(dense(got, n), dense_apply(L, dense(f, n)));
    }
}

TEST(Operator, CommutationAndLinearity)
{
    std::mt19937_64 rng(33);
    for (int i = 0; i < 40; ++i) {
        auto L = random_operator(rng);
        const std::uint32_t n = static_cast<std::uint32_t>(rng() % 6);
        auto g = random_poly(rng, px, 10, 6, 20), h = random_poly(rng, px, 10, 6, 20);
        const auto xn = IntPolynomial::monomial(px, {n}, Integer(1));
        EXPECT_EQ(apply_operator(L, xn * g), xn * apply_operator(L.shifted(Integer(n)), g));
        EXPECT_EQ(L.shifted(Integer(n)), ThetaOperator::x_power(0) * L.shifted(Integer(n)));
        // linear over constants only: theta(x g) != x theta(g)
        const IntPolynomial a(wittkit::testing::random_integer(rng, -9, 9)), b(wittkit::testing::random_integer(rng, -9, 9));
        EXPECT_EQ(apply_operator(L, a * g + b * h), a * apply_operator(L, g) + b * apply_operator(L, h));
        // operator composition agrees with successive application
        auto M = random_operator(rng);
        EXPECT_EQ(apply_operator(L * M, g), apply_operator(L, apply_operator(M, g)));
    }
}

TEST(Congruence, QuinticUpTo50)
{
    const auto L = quintic_picard_fuchs();
    const auto log = closed_form_logarithm("quintic-cy3", 50);
    const auto rows = pf_congruence_check(L, log, 50);
    ASSERT_EQ(rows.size(), 50u);
    for (const auto &r : rows) {
        EXPECT_TRUE(r.pass) << "k=" << r.k << " residual " << to_text(r.residual);
    }
    // k = 2: L(a_2) = L(1) = -75000 x^5, even
    EXPECT_EQ(apply_operator(L, log.coeff(2)), P("-75000*x^5"));
    EXPECT_THROW(pf_congruence_check(L, log, 51), insufficient_truncation);
}

TEST(Congruence, HesseOperator)
{
    // +x in the pencil, so no alternating sign: theta^2 + 27 x^3 (theta+1)(theta+2)
    const auto L = parse_operator("theta^2 + 27*x^3*(theta+1)*(theta+2)");
    const auto log = am_logarithm(builtin_family("hesse-cubic").family, 40);
    for (const auto &r : pf_congruence_check(L, log, 40)) {
        EXPECT_TRUE(r.pass) << "k=" << r.k << " residual " << to_text(r.residual);
    }
    // by hand: L(1+24x^3) = 270x^3 + 12960x^6
    EXPECT_EQ(apply_operator(L, log.coeff(5)), P("270*x^3+12960*x^6"));
    // wrong sign fails already at k = 5
    const auto bad = parse_operator("theta^2 - 27*x^3*(theta+1)*(theta+2)");
    EXPECT_FALSE(pf_congruence_check(bad, log, 5).back().pass);
}

TEST(Congruence, FailureCarriesResidual)
{
    const auto L = quintic_picard_fuchs();
    auto c = closed_form_logarithm("quintic-cy3", 7).coeffs();
    c[6] = c[6] + P("x");
    const auto rows = pf_congruence_check(L, Logarithm(c), 7);
    EXPECT_TRUE(rows[5].pass);
    EXPECT_FALSE(rows[6].pass);
    // theta^4 x = x, and -3125 x^5 (2*3*4*5) x = -375000 x^6; 375000 = 3 mod 7, so x + 4 x^6
    EXPECT_EQ(rows[6].residual, P("x+4*x^6"));
}

TEST(SeriesSolution, Examples)
{
    TruncatedSeries<Integer> one("x", {Integer(1), Integer(0), Integer(0)});
    EXPECT_TRUE(series_solution_check(ThetaOperator::theta(), one, 2).pass);
    const auto L = quintic_picard_fuchs();
    auto f = quintic_period_series(200);
    EXPECT_EQ(f[5], Integer(120));
    EXPECT_EQ(f[10], Integer(113400));
    auto r = series_solution_check(L, f, 200);
    EXPECT_TRUE(r.pass);
    for (std::size_t at : {0u, 7u, 10u, 195u}) {
        auto g = f;
        g.set(at, g[at] + Integer(1));
        auto bad = series_solution_check(L, g, 200);
        EXPECT_FALSE(bad.pass);
        ASSERT_TRUE(bad.first_failure.has_value());
        // theta^4 is injective on x^n for n > 0; n = 0 fails via the x^5 term
        EXPECT_EQ(*bad.first_failure, at == 0 ? 5u : at);
    }
    EXPECT_THROW(series_solution_check(L, quintic_period_series(10), 11), insufficient_truncation);
}

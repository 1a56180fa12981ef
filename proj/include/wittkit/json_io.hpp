#ifndef WITTKIT_JSON_IO_HPP
#define WITTKIT_JSON_IO_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <wittkit/errors.hpp>
#include <wittkit/fgl.hpp>
#include <wittkit/integer.hpp>
#include <wittkit/polynomial.hpp>
#include <wittkit/series.hpp>
#include <wittkit/witt.hpp>

// JSON encodings; schemas are in docs/formats.md. Big numbers are always
// decimal strings.

namespace wittkit
{

using json = nlohmann::json;

template <typename R>
json poly_to_json(const Polynomial<R> &p)
{
    json terms = json::array();
    for (const auto &[e, c] : p.terms()) {
        terms.push_back({{"exp", e}, {"coeff", to_string(c)}});
    }
    return {{"vars", p.variables()}, {"terms", std::move(terms)}};
}

template <typename R>
Polynomial<R> poly_from_json(const json &j)
{
    try {
        auto vars = j.at("vars").get<std::vector<std::string>>();
        typename Polynomial<R>::term_map terms;
        for (const auto &t : j.at("terms")) {
            auto e = t.at("exp").get<typename Polynomial<R>::exponent_type>();
            const auto s = t.at("coeff").get<std::string>();
            R c;
            if constexpr (std::is_same_v<R, Integer>) {
                c = parse_integer(s);
            } else {
                c = parse_rational(s);
            }
            if (!terms.emplace(std::move(e), std::move(c)).second) {
                throw malformed_input("duplicate exponent vector in polynomial JSON");
            }
        }
        return Polynomial<R>::from_terms(std::move(vars), std::move(terms));
    } catch (const json::exception &e) {
        throw malformed_input(std::string("bad polynomial JSON: ") + e.what());
    }
}

template <typename R>
json series_to_json(const TruncatedSeries<R> &s)
{
    json coeffs = json::array();
    for (const auto &c : s.coeffs()) {
        coeffs.push_back(poly_to_json(Polynomial<typename R::coefficient_type>(c)));
    }
    return {{"var", s.variable()}, {"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline json witt_to_json(const WittVector<IntPolynomial> &w)
{
    json coords = json::array();
    for (const auto &c : w.coords()) {
        coords.push_back(poly_to_json(c));
    }
    return {{"length", w.length()}, {"coords", std::move(coords)}};
}

inline WittVector<IntPolynomial> witt_from_json(const json &j)
{
    try {
        const auto n = j.at("length").get<std::size_t>();
        std::vector<IntPolynomial> coords;
        for (const auto &c : j.at("coords")) {
            coords.push_back(poly_from_json<Integer>(c));
        }
        if (coords.size() != n) {
            throw malformed_input("Witt JSON: length " + std::to_string(n) + " but " + std::to_string(coords.size())
                                  + " coordinates");
        }
        return WittVector<IntPolynomial>(std::move(coords));
    } catch (const json::exception &e) {
        throw malformed_input(std::string("bad Witt vector JSON: ") + e.what());
    }
}

inline json logarithm_to_json(const Logarithm &log)
{
    json coeffs = json::array();
    for (const auto &c : log.coeffs()) {
        coeffs.push_back(poly_to_json(c));
    }
    return {{"ring", log.ring()}, {"coeffs", std::move(coeffs)}};
}

inline Logarithm logarithm_from_json(const json &j)
{
    try {
        std::vector<IntPolynomial> coeffs;
        for (const auto &c : j.at("coeffs")) {
            coeffs.push_back(poly_from_json<Integer>(c));
        }
        return Logarithm(std::move(coeffs), j.at("ring").get<std::string>());
    } catch (const json::exception &e) {
        throw malformed_input(std::string("bad logarithm JSON: ") + e.what());
    }
}

inline json group_law_to_json(const FormalGroupLaw &g)
{
    json out = json::array();
    for (const auto &[e, c] : g.series().terms()) {
        out.push_back({{"i", e[0]}, {"j", e[1]}, {"coeff", poly_to_json(c)}});
    }
    return out;
}

} // namespace wittkit

#endif

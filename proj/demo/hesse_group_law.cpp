#include <iostream>

#include <wittkit/polynomial_io.hpp>
#include <wittkit/wittkit.hpp>

using namespace wittkit;

int main()
{
    const auto &fam = builtin_family("hesse").family;
    const auto log = am_logarithm(fam, 7);
    for (std::size_t m = 1; m <= 7; ++m) {
        std::cout << "a_" << m << " = " << to_text(log.coeff(m)) << "\n";
    }

    const auto g = group_law_from_logarithm(log, 4);
    std::cout << "\ngroup law up to total degree 4:\n";
    for (const auto &[e, c] : g.series().terms()) {
        std::cout << "  t1^" << e[0] << " t2^" << e[1] << " : " << to_text(c) << "\n";
    }
    std::cout << "integral: " << (integrality_report(g).pass ? "yes" : "no") << "\n";
}

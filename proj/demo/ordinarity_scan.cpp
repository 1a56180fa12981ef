#include <iostream>

#include <wittkit/polynomial_io.hpp>
#include <wittkit/wittkit.hpp>

using namespace wittkit;

int main()
{
    const auto rep = ordinarity_scan("hesse-cubic", 23, true);
    for (const auto &pr : rep.primes) {
        std::cout << "p = " << pr.p << "  a_p = " << to_text(pr.hasse_witt) << "\n  non-ordinary:";
        for (auto l : pr.nonordinary) {
            std::cout << " " << l;
        }
        std::cout << (pr.oracle_match.value_or(false) ? "  (point counts agree)" : "  (point counts disagree)") << "\n";
    }
}

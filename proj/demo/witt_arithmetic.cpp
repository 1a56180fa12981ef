#include <iostream>

#include <wittkit/polynomial_io.hpp>
#include <wittkit/wittkit.hpp>

using namespace wittkit;

static void show(const char *label, const WittVector<IntPolynomial> &w)
{
    std::cout << label << ":";
    for (std::size_t i = 1; i <= w.length(); ++i) {
        std::cout << "  [" << to_text(w.coord(i)) << "]";
    }
    std::cout << "\n";
}

int main()
{
    const WittVector<IntPolynomial> a({IntPolynomial(1), parse_polynomial<Integer>("x"), IntPolynomial(2)});
    const WittVector<IntPolynomial> b({parse_polynomial<Integer>("x"), IntPolynomial(0), IntPolynomial(-1)});
    show("a", a);
    show("b", b);
    show("a + b", witt_add(a, b));
    show("a * b", witt_mul(a, b));
    show("F_2(a)", witt_frobenius(2, a));
    show("V_2(a)", witt_verschiebung(2, a));
    show("[2]", teichmueller(IntPolynomial(2), 4));

    // ghost components turn + and * into coordinatewise operations
    const auto g = to_ghost(witt_mul(a, b));
    std::cout << "ghost(a*b):";
    for (std::size_t k = 1; k <= g.length(); ++k) {
        std::cout << "  " << to_text(g.entry(k));
    }
    std::cout << "\n";
}

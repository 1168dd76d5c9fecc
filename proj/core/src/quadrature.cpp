#include <feec/quadrature.hpp>

#include <feec/multiindex.hpp>
#include <feec/rational.hpp>

#include <cmath>

namespace feec {

// Grundmann & Moller (1978), SIAM J. Numer. Anal. 15; rule of index s on the
// n-simplex, exact for total degree 2s+1. Coefficients are computed in exact
// rational arithmetic before converting to double.
QuadratureRule grundmann_moeller(int n, int s)
{
    QuadratureRule rule;
    for (int i = 0; i <= s; ++i) {
        // weight factor for layer i
        Rational w = (i % 2 == 0) ? 1 : -1;
        // 2^{-2s} (d + n - 2i)^d / (i! (d + n - i)!), d = 2s+1
        int d = 2 * s + 1;
        Rational num = 1;
        for (int p = 0; p < d; ++p) num *= (d + n - 2 * i);
        Rational den = factorial(i) * factorial(d + n - i);
        for (int p = 0; p < 2 * s; ++p) den *= 2;
        w *= num / den;
        // normalize to unit measure: GM rule integrates against dV with
        // vol(ref simplex) = 1/n!; we fold that in by multiplying by n!.
        w *= factorial(n);
        for (const MultiIndex& beta : enumerate_multiindices(s - i, n)) {
            std::vector<double> pt(n + 1);
            for (int j = 0; j <= n; ++j)
                pt[j] = double(2 * beta[j] + 1) / double(d + n - 2 * i);
            rule.points.push_back(std::move(pt));
            rule.weights.push_back(w.get_d());
        }
    }
    return rule;
}

QuadratureRule simplex_quadrature(int n, int deg)
{
    int s = deg <= 1 ? 0 : (deg - 1 + 1) / 2; // 2s+1 >= deg
    return grundmann_moeller(n, s);
}

} // namespace feec

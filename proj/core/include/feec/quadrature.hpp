#pragma once

#include <vector>

namespace feec {

// Grundmann-Moller simplex quadrature, exact on polynomials of total degree
// <= 2s+1. Points are barycentric (n+1 entries); weights sum to 1 and refer
// to the normalized measure dV / vol(T).
struct QuadratureRule {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;
};

QuadratureRule grundmann_moeller(int n, int s);

// Smallest rule exact for polynomial degree deg.
QuadratureRule simplex_quadrature(int n, int deg);

} // namespace feec

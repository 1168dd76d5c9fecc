#pragma once

#include <feec/localform.hpp>
#include <feec/ratmat.hpp>

#include <vector>

namespace feec {

// Euclidean metric data of one embedded n-simplex. The Gram matrix
// gram(i,j) = <grad lambda_i, grad lambda_j> is exact rational; the volume
// itself is generally irrational, so it is carried as the exact square
// together with a double approximation.
struct SimplexGeometry {
    int n = 0; // simplex dimension
    int N = 0; // ambient dimension
    std::vector<std::vector<Rational>> vertices; // (n+1) x N
    RatMat gram;      // (n+1) x (n+1)
    Rational vol2;    // vol(T)^2, exact
    double volume = 0;

    static SimplexGeometry reference(int n);
    static SimplexGeometry from_vertices(std::vector<std::vector<Rational>> pts);

    SimplexGeometry face(const std::vector<int>& vertices_subset) const;
};

// int_T lambda^alpha dV = n! vol(T) prod(alpha_i!) / (|alpha|+n)!
double integrate_monomial(const MultiIndex& alpha, const SimplexGeometry& geom);

// The same integral divided by vol(T): exact rational.
Rational integrate_monomial_over_vol(const MultiIndex& alpha, int n);

// L2 inner product int_T <w,e>_g dV divided by vol(T): exact rational.
// The pointwise pairing of alternators is the Gram minor determinant.
Rational inner_product_over_vol(const LocalForm& w, const LocalForm& e, const SimplexGeometry& geom);

double inner_product(const LocalForm& w, const LocalForm& e, const SimplexGeometry& geom);

// Integral of a top-degree form (k = n) against the ascending-vertex
// orientation, or the mean-type integral of a 0-form over the volume.
double integrate_form(const LocalForm& w, const SimplexGeometry& geom);

} // namespace feec

#include <feec/geometry.hpp>

#include <cmath>
#include <stdexcept>

namespace feec {

namespace {

// Determinant by fraction-free-ish Gaussian elimination (exact rationals).
Rational det(RatMat m)
{
    int n = m.rows();
    Rational d = 1;
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m(i, col) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m(col, j), m(p, j));
            d = -d;
        }
        d *= m(col, col);
        Rational inv = 1 / m(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) * inv;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

RatMat inverse(const RatMat& m)
{
    int n = m.rows();
    RatMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    // Gauss-Jordan.
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (aug(i, col) != 0) { p = i; break; }
        if (p < 0) throw std::invalid_argument("inverse: singular matrix");
        if (p != col)
            for (int j = 0; j < 2 * n; ++j) std::swap(aug(col, j), aug(p, j));
        Rational inv = 1 / aug(col, col);
        for (int j = 0; j < 2 * n; ++j) aug(col, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == col || aug(i, col) == 0) continue;
            Rational f = aug(i, col);
            for (int j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(col, j);
        }
    }
    RatMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

} // namespace

SimplexGeometry SimplexGeometry::from_vertices(std::vector<std::vector<Rational>> pts)
{
    SimplexGeometry g;
    g.n = static_cast<int>(pts.size()) - 1;
    g.N = g.n >= 0 && !pts.empty() ? static_cast<int>(pts[0].size()) : 0;
    g.vertices = std::move(pts);
    int n = g.n, N = g.N;
    if (n == 0) {
        g.gram = RatMat(1, 1);
        g.vol2 = 1;
        g.volume = 1.0;
        return g;
    }
    // Edge matrix V: columns v_i - v_0, i = 1..n.
    RatMat V(N, n);
    for (int i = 1; i <= n; ++i)
        for (int a = 0; a < N; ++a) V(a, i - 1) = g.vertices[i][a] - g.vertices[0][a];
    RatMat G = V.transpose() * V; // n x n
    Rational dG = det(G);
    if (dG == 0) throw std::invalid_argument("degenerate simplex");
    g.vol2 = dG / (factorial(n) * factorial(n));
    g.volume = std::sqrt(g.vol2.get_d());
    // <grad lambda_i, grad lambda_j> = (G^{-1})_{ij} for i,j >= 1,
    // grad lambda_0 = -sum of the others.
    RatMat Ginv = inverse(G);
    g.gram = RatMat(n + 1, n + 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) g.gram(i, j) = Ginv(i - 1, j - 1);
    for (int j = 1; j <= n; ++j) {
        Rational s = 0;
        for (int i = 1; i <= n; ++i) s -= g.gram(i, j);
        g.gram(0, j) = s;
        g.gram(j, 0) = s;
    }
    Rational s00 = 0;
    for (int j = 1; j <= n; ++j) s00 -= g.gram(0, j);
    g.gram(0, 0) = s00;
    return g;
}

SimplexGeometry SimplexGeometry::reference(int n)
{
    std::vector<std::vector<Rational>> pts(n + 1, std::vector<Rational>(n, Rational(0)));
    for (int i = 1; i <= n; ++i) pts[i][i - 1] = 1;
    if (n == 0) pts = {{}};
    return from_vertices(std::move(pts));
}

SimplexGeometry SimplexGeometry::face(const std::vector<int>& sub) const
{
    std::vector<std::vector<Rational>> pts;
    pts.reserve(sub.size());
    for (int i : sub) pts.push_back(vertices[i]);
    return from_vertices(std::move(pts));
}

Rational integrate_monomial_over_vol(const MultiIndex& alpha, int n)
{
    Rational v = factorial(n);
    for (int i = 0; i <= n; ++i) v *= factorial(alpha[i]);
    v /= factorial(alpha.degree() + n);
    return v;
}

double integrate_monomial(const MultiIndex& alpha, const SimplexGeometry& geom)
{
    return integrate_monomial_over_vol(alpha, geom.n).get_d() * geom.volume;
}

namespace {

// det of the k x k Gram minor gram[sigma, tau].
Rational gram_minor(const RatMat& gram, const AltIndex& s, const AltIndex& t)
{
    int k = s.size();
    RatMat m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = gram(s[i], t[j]);
    return det(m);
}

} // namespace

Rational inner_product_over_vol(const LocalForm& w, const LocalForm& e, const SimplexGeometry& geom)
{
    if (w.k() != e.k() || w.n() != e.n()) throw std::invalid_argument("inner_product: degree mismatch");
    Rational total = 0;
    for (const auto& [ka, ca] : w.terms())
        for (const auto& [kb, cb] : e.terms()) {
            Rational pair = gram_minor(geom.gram, ka.second, kb.second);
            if (pair == 0) continue;
            total += ca * cb * pair * integrate_monomial_over_vol(ka.first + kb.first, geom.n);
        }
    return total;
}

double inner_product(const LocalForm& w, const LocalForm& e, const SimplexGeometry& geom)
{
    return inner_product_over_vol(w, e, geom).get_d() * geom.volume;
}

double integrate_form(const LocalForm& w, const SimplexGeometry& geom)
{
    if (w.k() == w.n()) return integrate_form_ref(w).get_d();
    if (w.k() == 0) {
        Rational total = 0;
        for (const auto& [key, c] : w.terms())
            total += c * integrate_monomial_over_vol(key.first, geom.n);
        return total.get_d() * geom.volume;
    }
    throw std::invalid_argument("integrate_form: degree must be 0 or n");
}

} // namespace feec

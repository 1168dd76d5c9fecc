#pragma once

#include <feec/multiindex.hpp>
#include <feec/rational.hpp>

#include <map>
#include <vector>

namespace feec {

// A polynomial differential k-form on one n-simplex, stored as a sparse map
//
//     (alpha, sigma) -> coefficient,   term  c * lambda^alpha d(lambda_sigma),
//
// with exact rational coefficients. Canonical invariant: every alternator
// sigma is a strictly increasing subset of {1..n} (d(lambda_0) is rewritten
// as -sum_i d(lambda_i) on construction), so two forms with homogenized
// polynomial parts are equal iff their maps are equal.
class LocalForm {
public:
    using Key = std::pair<MultiIndex, AltIndex>;
    using Terms = std::map<Key, Rational>;

    LocalForm() = default;
    LocalForm(int n, int k) : n_(n), k_(k) {}

    int n() const { return n_; }
    int k() const { return k_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    // Adds c * lambda^alpha d(lambda_sigma); sigma may contain index 0 and
    // be unsorted, normalization and sign bookkeeping happen here.
    void add_term(const MultiIndex& alpha, const std::vector<int>& sigma, const Rational& c);

    LocalForm& operator+=(const LocalForm& o);
    LocalForm& operator-=(const LocalForm& o);
    LocalForm operator+(const LocalForm& o) const;
    LocalForm operator-(const LocalForm& o) const;
    LocalForm operator*(const Rational& c) const;
    LocalForm operator-() const { return *this * Rational(-1); }

    bool operator==(const LocalForm& o) const;

    // Polynomial degree bounds over the present terms.
    int max_degree() const;
    int min_degree() const;

    // Multiplies each term by (sum_i lambda_i)^p as needed so that all
    // monomials have degree exactly r. Requires r >= max_degree().
    LocalForm homogenized(int r) const;

    // Both forms homogenized to a common degree, then compared.
    bool same_form(const LocalForm& o) const;

    static LocalForm zero(int n, int k) { return LocalForm(n, k); }
    static LocalForm one(int n);            // constant function 1
    static LocalForm lambda(int i, int n);  // barycentric coordinate
    static LocalForm dlambda(int i, int n); // its differential (normalized)
    static LocalForm monomial(const MultiIndex& alpha, const AltIndex& sigma);
    // n! * d(lambda_1) ^ ... ^ d(lambda_n) = vol_T / vol(T); its reference
    // integral is 1, so the true volume form is vol(T) times this.
    static LocalForm volume_form(int n);

private:
    int n_ = 0, k_ = 0;
    Terms terms_;

    void accumulate(const MultiIndex& alpha, const AltIndex& sigma, const Rational& c);
};

LocalForm exterior_derivative(const LocalForm& w);
LocalForm wedge(const LocalForm& w, const LocalForm& e);

// Whitney form phi_rho = sum_i (-1)^i lambda_rho(i) d(lambda_{rho - rho(i)})
// for a strictly increasing rho in {0..n}.
LocalForm whitney_form(const AltIndex& rho, int n);

// Pullback onto the subsimplex spanned by the listed vertices (ascending,
// values in {0..n}); barycentric coordinates are relabeled by position.
LocalForm trace(const LocalForm& w, const std::vector<int>& face);

// Reference integral of a top-degree form: the value of
// int lambda^alpha d(lambda_1..lambda_n) = prod alpha_i! / (|alpha|+n)!
// summed over terms, with respect to the ascending-vertex orientation.
// Independent of the embedding. For k = 0 requires n = 0 (point value).
Rational integrate_form_ref(const LocalForm& w);

// Coordinate vector of the homogenized form over the canonical
// (monomial of degree r) x (alternator) tensor basis.
std::vector<Rational> form_coordinates(const LocalForm& w, int r);
int form_coordinate_dim(int n, int k, int r);

} // namespace feec

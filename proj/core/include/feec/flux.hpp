#pragma once

#include <feec/interpolants.hpp>
#include <feec/layout.hpp>

#include <Eigen/Dense>

#include <memory>
#include <stdexcept>

namespace feec {

// Mathematically infeasible request on valid input (e.g. a harmonic
// obstruction when a potential is requested). Carries the residual norm.
struct MathError : std::runtime_error {
    double residual;
    MathError(const std::string& msg, double res)
        : std::runtime_error(msg), residual(res) {}
};

// L2 mass matrix of the Whitney block of a degree-k layout (the interior
// blocks of a lowest-order layout are empty).
Eigen::MatrixXd whitney_mass_matrix(const DofLayout& layout);

// Least-squares generalized inverse of d^{k-1} between Whitney spaces,
// under the mesh L2 inner products. Applying it is the one global solve of
// the flux reconstruction (conjugate gradients on the normal equations,
// dense rank-revealing fallback).
class WhitneyInverse {
public:
    WhitneyInverse(const Complex& c, int k, bool relative);

    const DofLayout& domain() const { return *Lkm1_; }   // degree k-1
    const DofLayout& codomain() const { return *Lk_; }   // degree k

    const RatMat& d_matrix() const { return D_; }

    // x minimizing |d x - w|_{L2}; also reports the remaining residual norm
    // (the harmonic obstruction when w is closed).
    std::vector<double> apply(const std::vector<double>& w,
                              double* residual_norm = nullptr) const;

private:
    std::shared_ptr<DofLayout> Lkm1_, Lk_;
    RatMat D_;
    Eigen::MatrixXd Mk_, N_; // codomain mass, normal matrix
};

WhitneyInverse pseudo_inverse_whitney(const Complex& c, int k, bool relative);

// Generalized inverse of d between the underline-ring spaces of one
// simplex: domain degree k with tag_k, codomain degree k-1 with tag_km1,
// mass-weighted least squares in the embedding metric, exact rational
// normal-equation solve.
class LocalInverse {
public:
    LocalInverse(int m, int k, SpaceTag tag_km1, SpaceTag tag_k,
                 const SimplexGeometry& geom);

    // d of the codomain basis in domain-basis coordinates
    const RatMat& d_matrix() const { return D_; }

    // least-squares preimage coefficients of a domain-coefficient vector
    std::vector<Rational> apply(const std::vector<Rational>& w) const;

    int domain_dim() const { return D_.rows(); }
    int codomain_dim() const { return D_.cols(); }

private:
    RatMat D_;
    RatMat N_;       // D^T M D
    RatMat DtM_;     // D^T M
};

LocalInverse pseudo_inverse_local(int m, int k, SpaceTag tag_km1, SpaceTag tag_k,
                                  const SimplexGeometry& geom);

struct FluxResult {
    GlobalForm xi_hi;   // degree k-1, layout of the assignment
    GlobalForm omega0;  // I_W omega, lowest-order degree-k layout
    double harmonic_residual = 0; // set by full_reconstruct

    // owners of the layouts the two forms point into
    std::shared_ptr<DofLayout> lo_layout, hi_layout;
};

// Partially localized flux reconstruction: omega = omega0 + d xi_hi for
// closed omega (relative closedness tolerance 1e-10 enforced). All
// higher-order work is local; no global solve happens here. level_order
// optionally prescribes the processing order of the faces of each dimension
// (level_order[m] is a permutation of 0..count(m)-1); the result is
// independent of it.
FluxResult flux_reconstruct(const GlobalForm& omega,
                            const std::vector<std::vector<int>>* level_order = nullptr);

// Additionally inverts the lowest-order part through the global Whitney
// solve: d xi = omega. Throws MathError if omega has a harmonic part.
FluxResult full_reconstruct(const GlobalForm& omega);

// Cohomology dimensions of the discrete complex of the assignment,
// exact-rank computation; equals the (relative) Betti numbers.
std::vector<int> cohomology_dims(const SequenceAssignment& a, bool relative);

// L2 norm of the piecewise form represented by g.
double l2_norm(const GlobalForm& g);
double l2_norm_cells(const Complex& c, const std::vector<LocalForm>& per_cell);

} // namespace feec

#pragma once

#include <feec/flux.hpp>

#include <array>
#include <optional>

namespace feec {

// Correspondence between differential forms on a 2d mesh and their vector
// calculus proxies, mediated by the quarter-turn rotation J(u,v) = (-v,u):
// a 0-form is a scalar function, a 1-form (u dx + v dy) is the field (u,v),
// a 2-form (g dx^dy) is the scalar g. Under these identifications,
// d of a 0-form is the gradient, J grad is the curl of a scalar, and d of a
// 1-form is the scalar curl of the field.
struct VectorProxy {
    static std::array<double, 2> rotate(const std::array<double, 2>& v)
    {
        return {-v[1], v[0]};
    }

    // field proxy of a 1-form at a barycentric point of an embedded triangle
    static std::array<double, 2> field(const LocalForm& w, const SimplexGeometry& geom,
                                       const std::vector<double>& bary);

    // scalar proxy of a 2-form (the coefficient against dx^dy), as a 0-form
    static LocalForm scalar(const LocalForm& w, const Rational& jacobian);
};

// Signed Jacobian det[v1-v0, v2-v0] of a top cell (ambient dimension must
// equal the mesh dimension).
Rational cell_jacobian(const Complex& c, int top_cell);

// The curl-curl model problem on a triangulated domain with homogeneous
// boundary conditions on the full boundary: find upsilon with
// <curl upsilon, curl nu> = <theta, nu> for all nu in Nd_r(T,U).
// The right-hand side theta is stored as the rotated 1-form tau = J^{-1}
// theta in the trimmed degree-(r+1) relative space (the proxy of RT_r(T,U)),
// so theta = curl of a scalar iff tau = d of a relative 0-form.
struct CurlCurlProblem {
    const Complex* complex = nullptr;
    int r = 0;
    GlobalForm tau; // 1-form proxy of theta
    std::shared_ptr<DofLayout> tau_layout;   // P_{r+1}^- Lambda^1(T,U)
    std::shared_ptr<DofLayout> scalar_layout; // P_{r+1} Lambda^0(T,U)

    // manufactured exact flux sigma* with curl sigma* = theta; equals
    // curl upsilon for the true solution
    std::optional<GlobalForm> exact_sigma;
};

// theta = curl of a random relative scalar FE function of order r+1;
// divergence-free and exact by construction.
CurlCurlProblem manufactured_problem(const Complex& c, int r, unsigned seed);

// Checks the problem invariants: 2d mesh with boundary, d tau = 0 within
// 1e-10 relative, and (when the relative topology is nontrivial) that the
// lowest-order interpolant of tau is exact. Throws InputError on failure.
void validate_problem(const CurlCurlProblem& p);

// Minimum-norm Galerkin solution in Nd_r(T,U) (the one global solve; the
// Galerkin residual on the test basis is gated at 1e-10 relative).
GlobalForm solve_galerkin(const CurlCurlProblem& p,
                          std::shared_ptr<DofLayout>* layout_out = nullptr);

// Scalar curls of a Nedelec field, one 0-form per top cell.
std::vector<LocalForm> curl_scalar_cells(const GlobalForm& upsilon);

// The piecewise affine function rho_h in P_{1,DC}(T) with
//   <rho_h, curl nu> = <theta_0, nu> + <gamma_h, curl nu>,  nu in H(curl),
// built by a sequential sweep over vertex patches: each vertex value is an
// overdetermined one-unknown least-squares problem against the already
// processed neighbors, with exact consistency checks. The compatibility
// precondition <theta_0, nu> = <gamma_h, curl nu> on the lowest-order test
// basis (a consequence of the Galerkin condition) is verified to 1e-9.
// theta_0 lives in the lowest-order relative layout; gamma is one constant
// per top cell. Throws MathError naming the offending vertex patch.
// vertex_order optionally prescribes the sweep priority (any permutation of
// the vertices); the result is independent of it.
std::vector<LocalForm> patch_solve_rho(const GlobalForm& theta_0,
                                       const std::vector<Rational>& gamma,
                                       const GlobalForm& upsilon,
                                       const std::vector<int>* vertex_order = nullptr);

// Equilibrated flux sigma_h = rho_h + xi_r - gamma_h in P_{r+1}(T,U):
// continuous, vanishing on the boundary, with curl sigma_h = theta. Only
// local computations; never triggers a global solve.
GlobalForm reconstruct_sigma(const CurlCurlProblem& p, const GlobalForm& upsilon,
                             std::shared_ptr<DofLayout>* layout_out = nullptr);

// Lowest-order construction (r = 0 specialization): sigma_h is directly the
// relative P_1 potential of the interpolated right-hand side.
GlobalForm lowest_order_sigma(const CurlCurlProblem& p, const GlobalForm& upsilon,
                              std::shared_ptr<DofLayout>* layout_out = nullptr);

struct EstimatorReport {
    double eta = 0;                   // |sigma_h - curl upsilon_h|
    std::vector<double> element2;     // per-element squares, sums to eta^2
    double curl_residual = 0;         // |curl sigma_h - theta| / max(1,|theta|)
    double jump_max = 0;              // largest inter-element trace jump
    double boundary_trace = 0;        // largest boundary trace of sigma_h
    std::optional<double> true_error; // |curl upsilon - curl upsilon_h|
    std::optional<double> identity_defect; // Prager-Synge defect, relative
    std::optional<double> efficiency;      // eta / true_error
    double seconds = 0;
};

EstimatorReport estimate(const CurlCurlProblem& p, const GlobalForm& upsilon,
                         const GlobalForm& sigma);

} // namespace feec

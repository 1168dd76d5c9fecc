#pragma once

#include <feec/layout.hpp>
#include <feec/quadrature.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace feec {

// A non-polynomial (or externally defined) differential form, evaluated
// through pullbacks: eval(verts, b) returns the coefficients of the pullback
// of omega onto the simplex spanned by the given mesh vertices at the
// barycentric point b, over the canonical alternator basis
// enumerate_alternators(k, 1, m) of that simplex. eval_d does the same for
// d omega at degree k+1; it is required whenever cocycle right-hand sides
// must be integrated (k < n). Integrals use Grundmann-Moller quadrature of
// the stated polynomial exactness degree.
struct AnalyticForm {
    int k = 0;
    std::function<std::vector<double>(const std::vector<int>& verts,
                                      const std::vector<double>& bary)> eval;
    std::function<std::vector<double>(const std::vector<int>& verts,
                                      const std::vector<double>& bary)> eval_d;
    int quad_degree = -1; // -1: pick 2r+2 from the target order r
};

// Either a piecewise-polynomial form with matching traces (one LocalForm
// per top cell) or an analytic form.
struct InterpolationInput {
    int k = 0;
    std::vector<LocalForm> per_cell;
    std::optional<AnalyticForm> analytic;

    static InterpolationInput piecewise(int k, std::vector<LocalForm> forms);
    static InterpolationInput callable(AnalyticForm f);
};

// Canonical interpolant onto the lowest-order (Whitney) space: the unique
// Whitney form with matching k-simplex integrals. The returned coefficients
// follow the c_F = k! int_F tr omega convention, i.e. they are coordinates
// over the global Whitney forms. The layout must be a degree-k layout.
GlobalForm interpolate_whitney(const InterpolationInput& in, const DofLayout& layout);

// The Whitney-block stage J_W of the canonical interpolant, expressed in
// an arbitrary degree-k layout (interior blocks zero).
GlobalForm j_whitney(const InterpolationInput& in, const DofLayout& layout);

// Solves the local cycle/cocycle system on the reference data of a simplex:
//   <x, d rho>_F = rhs_cycles[rho],    rho  in underline-ring P(k-1)-basis,
//   <d x, d beta>_F = rhs_cocycles[beta], beta in underline-ring P(k)-basis,
// for x in the underline-ring space of tag_k at degree k on the m-simplex
// with metric geom. Right-hand sides and the result are "over vol(F)"
// scaled, so the volume factor cancels throughout. Least-squares solve with
// a relative residual gate; throws on gate failure or singular systems.
std::vector<double> j_local(int m, int k, SpaceTag tag_km1, SpaceTag tag_k,
                            const SimplexGeometry& geom,
                            const std::vector<double>& rhs_cycles,
                            const std::vector<double>& rhs_cocycles,
                            double gate = 1e-12);

// Exact-residual convenience: right-hand sides computed from the trace
// residual (a polynomial form on the simplex).
std::vector<double> j_local(const LocalForm& residual, SpaceTag tag_km1,
                            SpaceTag tag_k, const SimplexGeometry& geom);

// The canonical commuting interpolant I_P = J_W + J_k + ... + J_n onto the
// space described by the layout.
GlobalForm interpolate_canonical(const InterpolationInput& in, const DofLayout& layout);

} // namespace feec

#include <feec/interpolants.hpp>

#include <Eigen/Dense>

#include <cmath>

namespace feec {

namespace {

// pointwise coefficients of w over enumerate_alternators(k, 1, n) at a
// barycentric point
std::vector<double> eval_form(const LocalForm& w, const std::vector<double>& b)
{
    auto alts = enumerate_alternators(w.k(), 1, w.n());
    std::vector<double> out(alts.size(), 0.0);
    std::map<AltIndex, int> ix;
    for (size_t i = 0; i < alts.size(); ++i) ix[alts[i]] = static_cast<int>(i);
    for (const auto& [key, c] : w.terms()) {
        double mono = to_double(c);
        for (int i = 0; i <= w.n(); ++i)
            for (int p = 0; p < key.first[i]; ++p) mono *= b[i];
        out[ix.at(key.second)] += mono;
    }
    return out;
}

// <d lambda_sigma, d lambda_tau> = det of the Gram minor
double alt_pair(const AltIndex& s, const AltIndex& t, const RatMat& gram)
{
    int k = s.size();
    if (k == 0) return 1.0;
    Eigen::MatrixXd M(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) M(i, j) = to_double(gram(s[i], t[j]));
    return M.determinant();
}

// int_F <a_samples, w>_g dV / vol(F) by quadrature; a_samples gives the
// pointwise coefficients of the first argument
double quad_pair(const std::function<std::vector<double>(const std::vector<double>&)>& a,
                 const LocalForm& w, const SimplexGeometry& geom,
                 const QuadratureRule& rule)
{
    auto alts = enumerate_alternators(w.k(), 1, w.n());
    double acc = 0;
    for (size_t q = 0; q < rule.points.size(); ++q) {
        std::vector<double> av = a(rule.points[q]);
        std::vector<double> wv = eval_form(w, rule.points[q]);
        double p = 0;
        for (size_t i = 0; i < alts.size(); ++i) {
            if (av[i] == 0) continue;
            for (size_t j = 0; j < alts.size(); ++j)
                if (wv[j] != 0) p += av[i] * wv[j] * alt_pair(alts[i], alts[j], geom.gram);
        }
        acc += rule.weights[q] * p;
    }
    return acc;
}

struct InputView {
    const InterpolationInput& in;
    const Complex& c;
    int quad_deg;

    bool analytic() const { return in.analytic.has_value(); }

    // exact trace of the piecewise input on simplex (m, idx), consistency
    // checked across the star
    LocalForm exact_trace(int m, int idx) const
    {
        const auto& F = c.simplex(m, idx);
        const auto& star = c.star_top(m, idx);
        LocalForm tr;
        bool first = true;
        for (int t : star) {
            LocalForm cur = trace(in.per_cell[t], positions_in(F, c.simplex(c.dim(), t)));
            if (first) {
                tr = cur;
                first = false;
            } else if (!tr.same_form(cur)) {
                throw InputError("interpolation input has mismatched traces");
            }
        }
        return tr;
    }

    // int_F tr omega in the reference-orientation convention
    Rational trace_integral(int m, int idx) const
    {
        if (!analytic()) return integrate_form_ref(exact_trace(m, idx));
        const auto& F = c.simplex(m, idx);
        if (m == 0) return rat_of(in.analytic->eval(F, {1.0})[0]);
        QuadratureRule rule = simplex_quadrature(m, quad_deg);
        double acc = 0;
        for (size_t q = 0; q < rule.points.size(); ++q)
            acc += rule.weights[q] * in.analytic->eval(F, rule.points[q])[0];
        acc /= to_double(factorial(m));
        return rat_of(acc);
    }
};

int default_quad_degree(const InterpolationInput& in, const DofLayout& layout)
{
    if (in.analytic && in.analytic->quad_degree > 0) return in.analytic->quad_degree;
    int r = 1;
    for (const auto& b : layout.blocks) r = std::max(r, b.tag.order);
    return 2 * r + 2;
}

} // namespace

InterpolationInput InterpolationInput::piecewise(int k, std::vector<LocalForm> forms)
{
    InterpolationInput in;
    in.k = k;
    in.per_cell = std::move(forms);
    return in;
}

InterpolationInput InterpolationInput::callable(AnalyticForm f)
{
    InterpolationInput in;
    in.k = f.k;
    in.analytic = std::move(f);
    return in;
}

GlobalForm j_whitney(const InterpolationInput& in, const DofLayout& layout)
{
    const Complex& c = *layout.complex;
    if (in.k != layout.k) throw InputError("form degree does not match the layout");
    if (!in.analytic &&
        static_cast<int>(in.per_cell.size()) != c.count(c.dim()))
        throw InputError("expected one local form per top cell");
    InputView view{in, c, default_quad_degree(in, layout)};
    GlobalForm g = zero_form(layout);
    for (size_t s = 0; s < layout.whitney.size(); ++s)
        g.coeff[s] = factorial(layout.k) * view.trace_integral(layout.k, layout.whitney[s]);
    return g;
}

GlobalForm interpolate_whitney(const InterpolationInput& in, const DofLayout& layout)
{
    return j_whitney(in, layout);
}

std::vector<double> j_local(int m, int k, SpaceTag tag_km1, SpaceTag tag_k,
                            const SimplexGeometry& geom,
                            const std::vector<double>& rhs_cycles,
                            const std::vector<double>& rhs_cocycles,
                            double gate)
{
    const LocalBasis& B = local_basis(m, tag_k, k, Variant::UnderlineRing);
    if (B.dim() == 0) return {};
    std::vector<LocalForm> rho_d; // d of the degree-(k-1) test forms
    if (k >= 1)
        for (const LocalForm& rho :
             local_basis(m, tag_km1, k - 1, Variant::UnderlineRing).forms)
            rho_d.push_back(exterior_derivative(rho));
    std::vector<LocalForm> dB;
    for (const LocalForm& w : B.forms) dB.push_back(exterior_derivative(w));

    const int rows = static_cast<int>(rho_d.size()) + B.dim();
    if (static_cast<int>(rhs_cycles.size()) != static_cast<int>(rho_d.size()) ||
        static_cast<int>(rhs_cocycles.size()) != B.dim())
        throw InputError("local system right-hand side has wrong size");

    RatMat A(rows, B.dim());
    for (size_t i = 0; i < rho_d.size(); ++i)
        for (int j = 0; j < B.dim(); ++j)
            A(static_cast<int>(i), j) = inner_product_over_vol(B.forms[j], rho_d[i], geom);
    for (int i = 0; i < B.dim(); ++i)
        for (int j = 0; j < B.dim(); ++j)
            A(static_cast<int>(rho_d.size()) + i, j) =
                inner_product_over_vol(dB[j], dB[i], geom);

    if (A.rank() != B.dim())
        throw std::logic_error("singular local interpolation system");

    Eigen::MatrixXd Ad = A.to_double();
    Eigen::VectorXd b(rows);
    for (size_t i = 0; i < rho_d.size(); ++i) b(static_cast<int>(i)) = rhs_cycles[i];
    for (int i = 0; i < B.dim(); ++i) b(static_cast<int>(rho_d.size()) + i) = rhs_cocycles[i];

    Eigen::VectorXd x = Ad.completeOrthogonalDecomposition().solve(b);
    double resid = (Ad * x - b).norm();
    if (resid > gate * std::max(1.0, b.norm()))
        throw std::logic_error("local interpolation system inconsistent beyond tolerance");

    return std::vector<double>(x.data(), x.data() + x.size());
}

std::vector<double> j_local(const LocalForm& residual, SpaceTag tag_km1,
                            SpaceTag tag_k, const SimplexGeometry& geom)
{
    const int m = residual.n(), k = residual.k();
    const LocalBasis& B = local_basis(m, tag_k, k, Variant::UnderlineRing);
    std::vector<double> rc, rcc;
    if (k >= 1)
        for (const LocalForm& rho :
             local_basis(m, tag_km1, k - 1, Variant::UnderlineRing).forms)
            rc.push_back(to_double(
                inner_product_over_vol(residual, exterior_derivative(rho), geom)));
    LocalForm dres = exterior_derivative(residual);
    for (const LocalForm& w : B.forms)
        rcc.push_back(to_double(
            inner_product_over_vol(dres, exterior_derivative(w), geom)));
    return j_local(m, k, tag_km1, tag_k, geom, rc, rcc);
}

GlobalForm interpolate_canonical(const InterpolationInput& in, const DofLayout& layout)
{
    const Complex& c = *layout.complex;
    const int n = c.dim(), k = layout.k;
    if (in.k != k) throw InputError("form degree does not match the layout");
    if (!in.analytic &&
        static_cast<int>(in.per_cell.size()) != c.count(n))
        throw InputError("expected one local form per top cell");
    InputView view{in, c, default_quad_degree(in, layout)};

    GlobalForm g = j_whitney(in, layout);

    for (int m = k; m <= n; ++m) {
        for (const auto& blk : layout.blocks) {
            if (blk.sdim != m || blk.size == 0) continue;
            const int idx = blk.index;
            const auto& F = c.simplex(m, idx);
            SimplexGeometry geom = c.geometry(m, idx);
            SpaceTag tag_km1 =
                k >= 1 ? layout.assignment.tag(m, idx, k - 1) : SpaceTag::full(0);

            // trace of the partial interpolant built so far
            int t0 = c.star_top(m, idx)[0];
            LocalForm cur = trace(localize(g, t0), positions_in(F, c.simplex(n, t0)));

            std::vector<double> coeffs;
            if (!view.analytic()) {
                LocalForm residual = view.exact_trace(m, idx) - cur;
                coeffs = j_local(residual, tag_km1, blk.tag, geom);
            } else {
                QuadratureRule rule = simplex_quadrature(m, view.quad_deg);
                auto eval_tr = [&](const std::vector<double>& b) {
                    return in.analytic->eval(F, b);
                };
                std::vector<double> rc, rcc;
                if (k >= 1)
                    for (const LocalForm& rho :
                         local_basis(m, tag_km1, k - 1, Variant::UnderlineRing).forms) {
                        LocalForm drho = exterior_derivative(rho);
                        double v = quad_pair(eval_tr, drho, geom, rule) -
                                   to_double(inner_product_over_vol(cur, drho, geom));
                        rc.push_back(v);
                    }
                const LocalBasis& B = local_basis(m, blk.tag, k, Variant::UnderlineRing);
                LocalForm dcur = exterior_derivative(cur);
                bool need_d = false;
                for (const LocalForm& w : B.forms)
                    if (!exterior_derivative(w).is_zero()) need_d = true;
                auto eval_dtr = [&](const std::vector<double>& b) {
                    return in.analytic->eval_d(F, b);
                };
                for (const LocalForm& w : B.forms) {
                    LocalForm dw = exterior_derivative(w);
                    double v = 0;
                    if (!dw.is_zero()) {
                        if (!in.analytic->eval_d)
                            throw InputError(
                                "analytic input needs eval_d for this interpolation");
                        v = quad_pair(eval_dtr, dw, geom, rule) -
                            to_double(inner_product_over_vol(dcur, dw, geom));
                    }
                    rcc.push_back(v);
                }
                (void)need_d;
                coeffs = j_local(m, k, tag_km1, blk.tag, geom, rc, rcc);
            }
            for (int j = 0; j < blk.size; ++j)
                g.coeff[blk.offset + j] = rat_of(coeffs[j]);
        }
    }
    return g;
}

} // namespace feec

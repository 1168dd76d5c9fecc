#include <feec/flux.hpp>

#include <feec/parallel.hpp>

#include <cmath>

namespace feec {

double l2_norm_cells(const Complex& c, const std::vector<LocalForm>& per_cell)
{
    double acc = 0;
    for (int t = 0; t < c.count(c.dim()); ++t) {
        if (per_cell[t].is_zero()) continue;
        acc += inner_product(per_cell[t], per_cell[t], c.geometry(c.dim(), t));
    }
    return std::sqrt(acc);
}

double l2_norm(const GlobalForm& g)
{
    const Complex& c = *g.layout->complex;
    std::vector<LocalForm> forms;
    for (int t = 0; t < c.count(c.dim()); ++t) forms.push_back(localize(g, t));
    return l2_norm_cells(c, forms);
}

Eigen::MatrixXd whitney_mass_matrix(const DofLayout& L)
{
    const Complex& c = *L.complex;
    const int n = c.dim(), k = L.k;
    const int dim = static_cast<int>(L.whitney.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
    for (int t = 0; t < c.count(n); ++t) {
        SimplexGeometry geom = c.geometry(n, t);
        const auto& T = c.simplex(n, t);
        auto subs = enumerate_alternators(k + 1, 0, n);
        std::vector<int> slot(subs.size());
        std::vector<LocalForm> phi(subs.size());
        for (size_t a = 0; a < subs.size(); ++a) {
            std::vector<int> verts;
            for (int p = 0; p < subs[a].size(); ++p) verts.push_back(T[subs[a][p]]);
            slot[a] = L.whitney_pos[c.index_of(k, verts)];
            if (slot[a] >= 0) phi[a] = whitney_form(subs[a], n);
        }
        for (size_t a = 0; a < subs.size(); ++a) {
            if (slot[a] < 0) continue;
            for (size_t b = a; b < subs.size(); ++b) {
                if (slot[b] < 0) continue;
                double v = inner_product(phi[a], phi[b], geom);
                M(slot[a], slot[b]) += v;
                if (a != b) M(slot[b], slot[a]) += v;
            }
        }
    }
    return M;
}

WhitneyInverse::WhitneyInverse(const Complex& c, int k, bool relative)
{
    if (k < 1 || k > c.dim()) throw InputError("degree out of range for d inverse");
    SequenceAssignment a = uniform_assignment(c, Family::Trimmed, 1);
    Lkm1_ = std::make_shared<DofLayout>(make_layout(c, a, k - 1, relative));
    Lk_ = std::make_shared<DofLayout>(make_layout(c, a, k, relative));
    D_ = assemble_global_d(*Lkm1_, *Lk_);
    Mk_ = whitney_mass_matrix(*Lk_);
    Eigen::MatrixXd Dd = D_.to_double();
    N_ = Dd.transpose() * Mk_ * Dd;
}

std::vector<double> WhitneyInverse::apply(const std::vector<double>& w,
                                          double* residual_norm) const
{
    global_solve_count()++;
    Eigen::MatrixXd Dd = D_.to_double();
    Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    Eigen::VectorXd rhs = Dd.transpose() * (Mk_ * wv);

    // conjugate gradients on the (consistent, semidefinite) normal equations
    const int dim = static_cast<int>(N_.rows());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd r = rhs, p = rhs;
    double rr = r.squaredNorm();
    double tol2 = 1e-24 * std::max(1.0, rhs.squaredNorm());
    bool converged = rr <= tol2;
    for (int it = 0; it < 20 * dim && !converged; ++it) {
        Eigen::VectorXd Np = N_ * p;
        double pNp = p.dot(Np);
        if (pNp <= 0) break;
        double alpha = rr / pNp;
        x += alpha * p;
        r -= alpha * Np;
        double rr2 = r.squaredNorm();
        if (rr2 <= tol2) {
            converged = true;
            break;
        }
        p = r + (rr2 / rr) * p;
        rr = rr2;
    }
    if (!converged) {
        // dense rank-revealing fallback in the metric of the codomain
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Mk_);
        Eigen::MatrixXd sqrtM = es.operatorSqrt();
        x = (sqrtM * Dd).completeOrthogonalDecomposition().solve(sqrtM * wv);
    }
    if (residual_norm) {
        Eigen::VectorXd res = Dd * x - wv;
        *residual_norm = std::sqrt(std::max(0.0, res.dot(Mk_ * res)));
    }
    return std::vector<double>(x.data(), x.data() + x.size());
}

WhitneyInverse pseudo_inverse_whitney(const Complex& c, int k, bool relative)
{
    return WhitneyInverse(c, k, relative);
}

LocalInverse::LocalInverse(int m, int k, SpaceTag tag_km1, SpaceTag tag_k,
                           const SimplexGeometry& geom)
{
    const LocalBasis& Bk = local_basis(m, tag_k, k, Variant::UnderlineRing);
    const LocalBasis& Bkm1 = local_basis(m, tag_km1, k - 1, Variant::UnderlineRing);
    const int deg = std::max(tag_k.order, tag_km1.order);

    SpanBuilder sb(form_coordinate_dim(m, k, deg));
    for (const LocalForm& w : Bk.forms) sb.insert(form_coordinates(w, deg));

    D_ = RatMat(Bk.dim(), Bkm1.dim());
    for (int j = 0; j < Bkm1.dim(); ++j) {
        auto coords = sb.coordinates(
            form_coordinates(exterior_derivative(Bkm1.forms[j]), deg));
        if (!coords)
            throw std::logic_error("bubble derivative leaves the assigned space");
        for (int i = 0; i < Bk.dim(); ++i) D_(i, j) = (*coords)[i];
    }

    RatMat M(Bk.dim(), Bk.dim());
    for (int i = 0; i < Bk.dim(); ++i)
        for (int j = i; j < Bk.dim(); ++j) {
            M(i, j) = inner_product_over_vol(Bk.forms[i], Bk.forms[j], geom);
            M(j, i) = M(i, j);
        }
    DtM_ = D_.transpose() * M;
    N_ = DtM_ * D_;
}

std::vector<Rational> LocalInverse::apply(const std::vector<Rational>& w) const
{
    if (static_cast<int>(w.size()) != D_.rows())
        throw InputError("coefficient vector has wrong size");
    std::vector<Rational> rhs(D_.cols(), Rational(0));
    for (int i = 0; i < D_.cols(); ++i)
        for (int j = 0; j < D_.rows(); ++j) rhs[i] += DtM_(i, j) * w[j];
    auto x = N_.solve(rhs);
    if (!x) throw std::logic_error("inconsistent local normal equations");
    return *x;
}

LocalInverse pseudo_inverse_local(int m, int k, SpaceTag tag_km1, SpaceTag tag_k,
                                  const SimplexGeometry& geom)
{
    return LocalInverse(m, k, tag_km1, tag_k, geom);
}

namespace {

struct FluxWork {
    const Complex& c;
    const DofLayout& L;
    std::vector<LocalForm> res;

    LocalForm consistent_trace(int m, int idx)
    {
        const auto& F = c.simplex(m, idx);
        LocalForm tr;
        bool first = true;
        for (int t : c.star_top(m, idx)) {
            LocalForm cur = trace(res[t], positions_in(F, c.simplex(c.dim(), t)));
            if (first) {
                tr = cur;
                first = false;
            } else if (!tr.same_form(cur)) {
                throw MathError("flux residual trace is multivalued (input not closed?)",
                                0.0);
            }
        }
        return tr;
    }
};

} // namespace

FluxResult flux_reconstruct(const GlobalForm& omega,
                            const std::vector<std::vector<int>>* level_order)
{
    const DofLayout& L = *omega.layout;
    const Complex& c = *L.complex;
    const int n = c.dim(), k = L.k;
    if (k < 1) throw InputError("flux reconstruction needs form degree >= 1");

    std::vector<LocalForm> forms;
    for (int t = 0; t < c.count(n); ++t) forms.push_back(localize(omega, t));

    // closedness gate
    double wnorm = l2_norm_cells(c, forms);
    if (k < n) {
        std::vector<LocalForm> dw;
        for (const auto& w : forms) dw.push_back(exterior_derivative(w));
        double dnorm = l2_norm_cells(c, dw);
        if (dnorm > 1e-10 * std::max(1.0, wnorm))
            throw InputError("input form is not closed");
    }

    FluxResult out;
    auto lo_assign = uniform_assignment(c, Family::Trimmed, 1);
    auto lo_layout = std::make_shared<DofLayout>(make_layout(c, lo_assign, k, L.relative));
    auto hi_layout =
        std::make_shared<DofLayout>(make_layout(c, L.assignment, k - 1, L.relative));

    out.omega0 = interpolate_whitney(InterpolationInput::piecewise(k, forms), *lo_layout);
    out.xi_hi = zero_form(*hi_layout);

    FluxWork work{c, L, forms};
    for (int t = 0; t < c.count(n); ++t) work.res[t] -= localize(out.omega0, t);

    for (int m = k; m <= n; ++m) {
        // independent local solves on this level
        struct LevelItem {
            int idx = -1;
            LocalForm xi; // preimage bubble on the face
            std::vector<Rational> coeffs;
        };
        std::vector<LevelItem> items;
        std::vector<int> order(c.count(m));
        for (int i = 0; i < c.count(m); ++i) order[i] = i;
        if (level_order && m < static_cast<int>(level_order->size()) &&
            !(*level_order)[m].empty())
            order = (*level_order)[m];
        for (int idx : order) {
            LocalForm theta = work.consistent_trace(m, idx);
            int bid = hi_layout->block_of[m][idx];
            int lbid = L.block_of[m][idx];
            if (bid < 0 || lbid < 0) {
                if (!theta.same_form(LocalForm::zero(m, k)))
                    throw MathError("nonzero residual trace on the boundary subcomplex",
                                    0.0);
                continue;
            }
            if (theta.same_form(LocalForm::zero(m, k))) continue;

            SpaceTag tag_k = L.assignment.tag(m, idx, k);
            SpaceTag tag_km1 = L.assignment.tag(m, idx, k - 1);
            const LocalBasis& Bk = local_basis(m, tag_k, k, Variant::UnderlineRing);
            SpanBuilder sb(form_coordinate_dim(m, k, tag_k.order));
            for (const LocalForm& w : Bk.forms)
                sb.insert(form_coordinates(w, tag_k.order));
            if (theta.max_degree() > tag_k.order)
                throw MathError("flux residual leaves the bubble space", 0.0);
            auto coords = sb.coordinates(form_coordinates(theta, tag_k.order));
            if (!coords)
                throw MathError("flux residual leaves the bubble space", 0.0);

            LocalInverse inv = pseudo_inverse_local(m, k, tag_km1, tag_k,
                                                    c.geometry(m, idx));
            LevelItem item;
            item.idx = idx;
            item.coeffs = inv.apply(*coords);
            const LocalBasis& Bkm1 =
                local_basis(m, tag_km1, k - 1, Variant::UnderlineRing);
            item.xi = LocalForm(m, k - 1);
            for (size_t j = 0; j < item.coeffs.size(); ++j)
                if (item.coeffs[j] != 0) item.xi += Bkm1.forms[j] * item.coeffs[j];
            items.push_back(std::move(item));
        }
        for (const auto& item : items) {
            const auto& blk = hi_layout->blocks[hi_layout->block_of[m][item.idx]];
            for (int j = 0; j < blk.size; ++j)
                out.xi_hi.coeff[blk.offset + j] = item.coeffs[j];
            const auto& F = c.simplex(m, item.idx);
            SpaceTag tag_km1 = L.assignment.tag(m, item.idx, k - 1);
            for (int t : c.star_top(m, item.idx))
                work.res[t] -= exterior_derivative(
                    ext_form(item.xi, tag_km1, positions_in(F, c.simplex(n, t)), n));
        }
    }

    // the recursion is exact in rational arithmetic
    double left = l2_norm_cells(c, work.res);
    if (left > 1e-9 * std::max(1.0, wnorm))
        throw MathError("flux reconstruction identity violated", left);

    out.lo_layout = lo_layout;
    out.hi_layout = hi_layout;
    return out;
}

FluxResult full_reconstruct(const GlobalForm& omega)
{
    FluxResult fr = flux_reconstruct(omega);
    const Complex& c = *omega.layout->complex;
    const int k = omega.layout->k;

    WhitneyInverse W(c, k, omega.layout->relative);
    std::vector<double> w0(fr.omega0.coeff.size());
    for (size_t i = 0; i < w0.size(); ++i) w0[i] = to_double(fr.omega0.coeff[i]);
    double resid = 0;
    std::vector<double> xlo = W.apply(w0, &resid);
    double scale = std::max(1.0, l2_norm(omega));
    fr.harmonic_residual = resid;
    if (resid > 1e-8 * scale)
        throw MathError("input has a harmonic obstruction; no potential exists", resid);
    for (size_t i = 0; i < xlo.size(); ++i)
        fr.xi_hi.coeff[i] += rat_of(xlo[i]);
    return fr;
}

std::vector<int> cohomology_dims(const SequenceAssignment& a, bool relative)
{
    const Complex& c = *a.complex;
    const int n = c.dim();
    std::vector<DofLayout> L;
    for (int k = 0; k <= n; ++k) L.push_back(make_layout(c, a, k, relative));
    std::vector<int> rank(n + 1, 0); // rank of d^k for k = 0..n-1
    for (int k = 0; k < n; ++k) rank[k] = assemble_global_d(L[k], L[k + 1]).rank();
    std::vector<int> dims(n + 1);
    for (int k = 0; k <= n; ++k) {
        int kerdim = L[k].total - (k < n ? rank[k] : 0);
        dims[k] = kerdim - (k > 0 ? rank[k - 1] : 0);
    }
    return dims;
}

} // namespace feec

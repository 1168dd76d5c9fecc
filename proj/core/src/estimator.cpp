#include <feec/estimator.hpp>

#include <feec/parallel.hpp>

#include <chrono>
#include <cmath>
#include <queue>
#include <random>
#include <sstream>

namespace feec {

namespace {

int sgn(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// barycentric gradients of an embedded triangle, rows 0..2
std::vector<std::vector<Rational>> bary_gradients(const SimplexGeometry& geom)
{
    if (geom.n != 2 || geom.N != 2)
        throw InputError("planar triangle required");
    Rational a = geom.vertices[1][0] - geom.vertices[0][0];
    Rational b = geom.vertices[2][0] - geom.vertices[0][0];
    Rational c = geom.vertices[1][1] - geom.vertices[0][1];
    Rational d = geom.vertices[2][1] - geom.vertices[0][1];
    Rational det = a * d - b * c;
    // [grad lambda_1; grad lambda_2] = inverse of [[a,b],[c,d]]^T
    std::vector<std::vector<Rational>> g(3, std::vector<Rational>(2));
    g[1] = {d / det, -b / det};
    g[2] = {-c / det, a / det};
    g[0] = {-g[1][0] - g[2][0], -g[1][1] - g[2][1]};
    return g;
}

double eval_poly(const MultiIndex& alpha, const std::vector<double>& bary)
{
    double v = 1;
    for (int i = 0; i < static_cast<int>(bary.size()); ++i)
        for (int p = 0; p < alpha[i]; ++p) v *= bary[i];
    return v;
}

// supported layout dofs on one top cell together with their localized forms
std::vector<std::pair<int, LocalForm>> local_dof_forms(const DofLayout& L, int t)
{
    const Complex& c = *L.complex;
    const int n = c.dim(), k = L.k;
    const auto& T = c.simplex(n, t);
    std::vector<std::pair<int, LocalForm>> out;
    for (const AltIndex& sub : enumerate_alternators(k + 1, 0, n)) {
        std::vector<int> verts;
        for (int p = 0; p < sub.size(); ++p) verts.push_back(T[sub[p]]);
        int slot = L.whitney_pos[c.index_of(k, verts)];
        if (slot >= 0) out.push_back({slot, whitney_form(sub, n)});
    }
    for (int m = k; m <= n; ++m)
        for (const AltIndex& sub : enumerate_alternators(m + 1, 0, n)) {
            std::vector<int> verts, iota;
            for (int p = 0; p < sub.size(); ++p) {
                verts.push_back(T[sub[p]]);
                iota.push_back(sub[p]);
            }
            int bid = L.block_of[m][c.index_of(m, verts)];
            if (bid < 0 || L.blocks[bid].size == 0) continue;
            const auto& blk = L.blocks[bid];
            const LocalBasis& basis = local_basis(m, blk.tag, k, Variant::UnderlineRing);
            for (int j = 0; j < blk.size; ++j)
                out.push_back({blk.offset + j, ext_form(basis.forms[j], blk.tag, iota, n)});
        }
    return out;
}

// int_T tau ^ mu with the counterclockwise physical orientation
Rational pair_theta(const LocalForm& tau, const LocalForm& mu, const Rational& jac)
{
    return Rational(sgn(jac)) * integrate_form_ref(wedge(tau, mu));
}

Rational mean_value(const LocalForm& f, int n)
{
    Rational total = 0;
    for (const auto& [key, c] : f.terms())
        total += c * integrate_monomial_over_vol(key.first, n);
    return total;
}

// minimum-norm solve of the semidefinite system A x = b
Eigen::VectorXd min_norm_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
{
    const int dim = static_cast<int>(A.rows());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd r = b, p = b;
    double rr = r.squaredNorm();
    double tol2 = 1e-26 * std::max(1.0, b.squaredNorm());
    bool converged = rr <= tol2;
    for (int it = 0; it < 20 * dim && !converged; ++it) {
        Eigen::VectorXd Ap = A * p;
        double pAp = p.dot(Ap);
        if (pAp <= 0) break;
        double alpha = rr / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        double rr2 = r.squaredNorm();
        if (rr2 <= tol2) {
            converged = true;
            break;
        }
        p = r + (rr2 / rr) * p;
        rr = rr2;
    }
    if (!converged) x = A.completeOrthogonalDecomposition().solve(b);
    return x;
}

} // namespace

std::array<double, 2> VectorProxy::field(const LocalForm& w, const SimplexGeometry& geom,
                                         const std::vector<double>& bary)
{
    if (w.k() != 1) throw InputError("field proxy needs a 1-form");
    auto g = bary_gradients(geom);
    std::array<double, 2> out{0, 0};
    for (const auto& [key, c] : w.terms()) {
        double v = to_double(c) * eval_poly(key.first, bary);
        int i = key.second[0];
        out[0] += v * to_double(g[i][0]);
        out[1] += v * to_double(g[i][1]);
    }
    return out;
}

LocalForm VectorProxy::scalar(const LocalForm& w, const Rational& jacobian)
{
    if (w.k() != w.n()) throw InputError("scalar proxy needs a top-degree form");
    LocalForm out(w.n(), 0);
    for (const auto& [key, c] : w.terms())
        out.add_term(key.first, {}, c / jacobian);
    return out;
}

Rational cell_jacobian(const Complex& c, int top_cell)
{
    SimplexGeometry geom = c.geometry(c.dim(), top_cell);
    if (geom.n != 2 || geom.N != 2)
        throw InputError("planar triangulation required");
    Rational a = geom.vertices[1][0] - geom.vertices[0][0];
    Rational b = geom.vertices[2][0] - geom.vertices[0][0];
    Rational d = geom.vertices[1][1] - geom.vertices[0][1];
    Rational e = geom.vertices[2][1] - geom.vertices[0][1];
    return a * e - b * d;
}

CurlCurlProblem manufactured_problem(const Complex& c, int r, unsigned seed)
{
    CurlCurlProblem p;
    p.complex = &c;
    p.r = r;
    auto a = uniform_assignment(c, Family::Trimmed, r + 1);
    p.scalar_layout = std::make_shared<DofLayout>(make_layout(c, a, 0, true));
    p.tau_layout = std::make_shared<DofLayout>(make_layout(c, a, 1, true));

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-6, 6);
    GlobalForm sigma = zero_form(*p.scalar_layout);
    for (auto& v : sigma.coeff) v = rat_of(num(rng), 1 + (rng() % 4));

    RatMat D = assemble_global_d(*p.scalar_layout, *p.tau_layout);
    p.tau = zero_form(*p.tau_layout);
    for (int i = 0; i < D.rows(); ++i)
        for (int j = 0; j < D.cols(); ++j)
            if (sigma.coeff[j] != 0) p.tau.coeff[i] += D(i, j) * sigma.coeff[j];
    p.exact_sigma = sigma;
    return p;
}

void validate_problem(const CurlCurlProblem& p)
{
    const Complex& c = *p.complex;
    if (c.dim() != 2) throw InputError("curl-curl problem needs a 2d mesh");
    bool has_boundary = false;
    for (int v = 0; v < c.count(0); ++v) has_boundary = has_boundary || c.in_boundary(0, v);
    if (!has_boundary) throw InputError("curl-curl problem needs a mesh with boundary");

    std::vector<LocalForm> tau_cells, dtau;
    for (int t = 0; t < c.count(2); ++t) {
        tau_cells.push_back(localize(p.tau, t));
        dtau.push_back(exterior_derivative(tau_cells.back()));
    }
    double tn = l2_norm_cells(c, tau_cells);
    if (l2_norm_cells(c, dtau) > 1e-10 * std::max(1.0, tn))
        throw InputError("right-hand side is not divergence free");

    if (betti_numbers(c, true)[1] > 0) {
        // nontrivial relative topology: check theta against harmonic fields
        // through exactness of the lowest-order interpolant
        auto a0 = uniform_assignment(c, Family::Trimmed, 1);
        DofLayout W0 = make_layout(c, a0, 0, true);
        DofLayout W1 = make_layout(c, a0, 1, true);
        GlobalForm t0 = interpolate_whitney(
            InterpolationInput::piecewise(1, tau_cells), W1);
        RatMat D = assemble_global_d(W0, W1);
        SpanBuilder image(D.rows());
        for (int j = 0; j < D.cols(); ++j) {
            std::vector<Rational> col(D.rows());
            for (int i = 0; i < D.rows(); ++i) col[i] = D(i, j);
            image.insert(col);
        }
        if (!image.coordinates(t0.coeff))
            throw InputError("right-hand side has a harmonic component");
    }
}

GlobalForm solve_galerkin(const CurlCurlProblem& p,
                          std::shared_ptr<DofLayout>* layout_out)
{
    const Complex& c = *p.complex;
    std::shared_ptr<DofLayout> L = p.tau_layout;
    if (layout_out) *layout_out = L;

    const int dim = L->total;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
    for (int t = 0; t < c.count(2); ++t) {
        SimplexGeometry geom = c.geometry(2, t);
        Rational jac = cell_jacobian(c, t);
        LocalForm tau_t = localize(p.tau, t);
        auto dofs = local_dof_forms(*L, t);
        std::vector<LocalForm> dmu(dofs.size());
        for (size_t i = 0; i < dofs.size(); ++i)
            dmu[i] = exterior_derivative(dofs[i].second);
        for (size_t i = 0; i < dofs.size(); ++i) {
            b(dofs[i].first) += to_double(pair_theta(tau_t, dofs[i].second, jac));
            for (size_t j = i; j < dofs.size(); ++j) {
                double v = inner_product(dmu[i], dmu[j], geom);
                A(dofs[i].first, dofs[j].first) += v;
                if (i != j) A(dofs[j].first, dofs[i].first) += v;
            }
        }
    }

    global_solve_count()++;
    Eigen::VectorXd x = min_norm_solve(A, b);
    double resid = (A * x - b).norm();
    if (resid > 1e-10 * std::max(1.0, b.norm()))
        throw MathError("right-hand side incompatible with the Galerkin system", resid);

    GlobalForm u = zero_form(*L);
    for (int i = 0; i < dim; ++i) u.coeff[i] = rat_of(x(i));
    return u;
}

std::vector<LocalForm> curl_scalar_cells(const GlobalForm& upsilon)
{
    const Complex& c = *upsilon.layout->complex;
    std::vector<LocalForm> out;
    // curl nu = div(J nu): the negative of the dx^dy coefficient of d nu
    for (int t = 0; t < c.count(2); ++t)
        out.push_back(VectorProxy::scalar(
                          exterior_derivative(localize(upsilon, t)),
                          cell_jacobian(c, t)) * Rational(-1));
    return out;
}

std::vector<LocalForm> patch_solve_rho(const GlobalForm& theta_0,
                                       const std::vector<Rational>& gamma,
                                       const GlobalForm& upsilon,
                                       const std::vector<int>* vertex_order)
{
    const DofLayout& W1 = *theta_0.layout;
    const Complex& c = *W1.complex;
    (void)upsilon; // enters through gamma; kept for the interface contract

    // compatibility of the patch data: <theta_0, nu> + <gamma, curl nu> = 0
    // for every lowest-order test field nu (a consequence of the Galerkin
    // condition for upsilon)
    double scale = 0, worst = 0;
    std::vector<double> resid(W1.total, 0.0);
    for (int t = 0; t < c.count(2); ++t) {
        Rational jac = cell_jacobian(c, t);
        Rational vol = (jac > 0 ? jac : -jac) / 2;
        LocalForm th_t = localize(theta_0, t);
        auto dofs = local_dof_forms(W1, t);
        for (auto& [slot, nu] : dofs) {
            LocalForm curl_nu =
                VectorProxy::scalar(exterior_derivative(nu), jac) * Rational(-1);
            Rational lhs = pair_theta(th_t, nu, jac);
            Rational rhs = gamma[t] * mean_value(curl_nu, 2) * vol;
            resid[slot] += to_double(lhs + rhs);
            scale = std::max(scale, std::abs(to_double(lhs)));
        }
    }
    for (double r : resid) worst = std::max(worst, std::abs(r));
    if (worst > 1e-9 * std::max(1.0, scale))
        throw MathError("patch data violates the Galerkin compatibility condition",
                        worst);

    // sequential sweep over vertex patches: integrate the edge coefficients
    // of theta_0 to a continuous piecewise affine potential anchored at the
    // boundary; every revisit of a vertex is an exact consistency check
    std::vector<std::vector<std::pair<int, int>>> adj(c.count(0)); // vertex -> (edge, other)
    for (int e = 0; e < c.count(1); ++e) {
        const auto& E = c.simplex(1, e);
        adj[E[0]].push_back({e, E[1]});
        adj[E[1]].push_back({e, E[0]});
    }
    const int nv = c.count(0);
    std::vector<int> priority(nv);
    if (vertex_order) {
        if (static_cast<int>(vertex_order->size()) != nv)
            throw InputError("vertex order must be a permutation of the vertices");
        priority = *vertex_order;
    } else {
        for (int v = 0; v < nv; ++v) priority[v] = v;
    }

    std::vector<Rational> u(nv, Rational(0));
    std::vector<char> known(nv, 0);
    int remaining = 0;
    for (int v = 0; v < nv; ++v)
        known[v] = c.in_boundary(0, v) ? 1 : (++remaining, 0);
    if (remaining == nv)
        throw MathError("no boundary vertices to anchor the potential", 0.0);

    auto edge_delta = [&](int e) { // u at E[1] minus u at E[0]
        int slot = W1.whitney_pos[e];
        return slot >= 0 ? theta_0.coeff[slot] : Rational(0);
    };
    while (remaining > 0) {
        bool progress = false;
        for (int v : priority) {
            if (known[v]) continue;
            for (auto [e, a] : adj[v]) {
                if (!known[a]) continue;
                const auto& E = c.simplex(1, e);
                Rational delta = edge_delta(e);
                u[v] = (v == E[1]) ? Rational(u[a] + delta) : Rational(u[a] - delta);
                known[v] = 1;
                --remaining;
                progress = true;
                break;
            }
        }
        if (!progress) {
            for (int v : priority)
                if (!known[v]) {
                    std::ostringstream msg;
                    msg << "patch problem at vertex " << v
                        << " is unreachable from the boundary";
                    throw MathError(msg.str(), 0.0);
                }
        }
    }
    // every edge revisits both endpoint patches: exact consistency check
    for (int e = 0; e < c.count(1); ++e) {
        const auto& E = c.simplex(1, e);
        if (u[E[1]] - u[E[0]] != edge_delta(e)) {
            std::ostringstream msg;
            msg << "patch problem at vertex " << E[1]
                << " is inconsistent (theta_0 is not exact)";
            throw MathError(msg.str(),
                            std::abs(to_double(u[E[1]] - u[E[0]] - edge_delta(e))));
        }
    }

    std::vector<LocalForm> rho;
    for (int t = 0; t < c.count(2); ++t) {
        const auto& T = c.simplex(2, t);
        LocalForm f(2, 0);
        for (int pos = 0; pos < 3; ++pos)
            if (u[T[pos]] != 0) f += LocalForm::lambda(pos, 2) * u[T[pos]];
        if (gamma[t] != 0) f += LocalForm::one(2) * gamma[t];
        rho.push_back(f);
    }
    return rho;
}

GlobalForm reconstruct_sigma(const CurlCurlProblem& p, const GlobalForm& upsilon,
                             std::shared_ptr<DofLayout>* layout_out)
{
    const Complex& c = *p.complex;
    if (layout_out) *layout_out = p.scalar_layout;

    FluxResult fr = flux_reconstruct(p.tau); // local solves only
    std::vector<LocalForm> curl_u = curl_scalar_cells(upsilon);
    std::vector<Rational> gamma;
    std::vector<LocalForm> xi_cells;
    for (int t = 0; t < c.count(2); ++t) {
        xi_cells.push_back(localize(fr.xi_hi, t));
        gamma.push_back(mean_value(xi_cells.back() - curl_u[t], 2));
    }
    std::vector<LocalForm> rho = patch_solve_rho(fr.omega0, gamma, upsilon);

    std::vector<LocalForm> sigma_cells;
    for (int t = 0; t < c.count(2); ++t) {
        LocalForm s = rho[t] + xi_cells[t];
        if (gamma[t] != 0) s -= LocalForm::one(2) * gamma[t];
        sigma_cells.push_back(s);
    }
    return geometric_decompose(sigma_cells, *p.scalar_layout);
}

GlobalForm lowest_order_sigma(const CurlCurlProblem& p, const GlobalForm& upsilon,
                              std::shared_ptr<DofLayout>* layout_out)
{
    const Complex& c = *p.complex;
    if (layout_out) *layout_out = p.scalar_layout;

    auto a0 = uniform_assignment(c, Family::Trimmed, 1);
    DofLayout W1 = make_layout(c, a0, 1, true);
    std::vector<LocalForm> tau_cells;
    for (int t = 0; t < c.count(2); ++t) tau_cells.push_back(localize(p.tau, t));
    GlobalForm theta_0 =
        interpolate_whitney(InterpolationInput::piecewise(1, tau_cells), W1);

    std::vector<LocalForm> curl_u = curl_scalar_cells(upsilon);
    std::vector<Rational> gamma;
    for (int t = 0; t < c.count(2); ++t)
        gamma.push_back(-mean_value(curl_u[t], 2));
    std::vector<LocalForm> rho = patch_solve_rho(theta_0, gamma, upsilon);

    std::vector<LocalForm> sigma_cells;
    for (int t = 0; t < c.count(2); ++t) {
        LocalForm s = rho[t];
        if (gamma[t] != 0) s -= LocalForm::one(2) * gamma[t];
        sigma_cells.push_back(s);
    }
    return geometric_decompose(sigma_cells, *p.scalar_layout);
}

EstimatorReport estimate(const CurlCurlProblem& p, const GlobalForm& upsilon,
                         const GlobalForm& sigma)
{
    auto start = std::chrono::steady_clock::now();
    const Complex& c = *p.complex;
    EstimatorReport rep;

    std::vector<LocalForm> curl_u = curl_scalar_cells(upsilon);
    std::vector<LocalForm> sigma_cells, err_cells, curl_resid;
    double tau_norm2 = 0;
    for (int t = 0; t < c.count(2); ++t) {
        SimplexGeometry geom = c.geometry(2, t);
        sigma_cells.push_back(localize(sigma, t));
        err_cells.push_back(sigma_cells.back() - curl_u[t]);
        double e2 = inner_product(err_cells.back(), err_cells.back(), geom);
        rep.element2.push_back(e2);
        rep.eta += e2;
        LocalForm tau_t = localize(p.tau, t);
        LocalForm res = exterior_derivative(sigma_cells.back()) - tau_t;
        rep.curl_residual += inner_product(res, res, geom);
        tau_norm2 += inner_product(tau_t, tau_t, geom);
    }
    rep.eta = std::sqrt(std::max(0.0, rep.eta));
    rep.curl_residual =
        std::sqrt(rep.curl_residual) / std::max(1.0, std::sqrt(tau_norm2));

    // trace diagnostics along edges
    for (int e = 0; e < c.count(1); ++e) {
        const auto& E = c.simplex(1, e);
        SimplexGeometry eg = c.geometry(1, e);
        const auto& star = c.star_top(1, e);
        std::vector<LocalForm> traces;
        for (int t : star)
            traces.push_back(trace(sigma_cells[t], positions_in(E, c.simplex(2, t))));
        if (c.in_boundary(1, e)) {
            for (const auto& tr : traces)
                rep.boundary_trace = std::max(
                    rep.boundary_trace, std::sqrt(std::abs(inner_product(tr, tr, eg))));
        } else if (traces.size() == 2) {
            LocalForm jump = traces[0] - traces[1];
            rep.jump_max = std::max(
                rep.jump_max, std::sqrt(std::abs(inner_product(jump, jump, eg))));
        }
    }

    if (p.exact_sigma) {
        double true2 = 0, dist2 = 0;
        for (int t = 0; t < c.count(2); ++t) {
            SimplexGeometry geom = c.geometry(2, t);
            LocalForm star_t = localize(*p.exact_sigma, t);
            LocalForm te = star_t - curl_u[t];
            LocalForm ds = sigma_cells[t] - star_t;
            true2 += inner_product(te, te, geom);
            dist2 += inner_product(ds, ds, geom);
        }
        rep.true_error = std::sqrt(std::max(0.0, true2));
        double lhs = rep.eta * rep.eta;
        rep.identity_defect = std::abs(lhs - dist2 - true2) / std::max(lhs, 1e-30);
        if (*rep.true_error > 1e-14) rep.efficiency = rep.eta / *rep.true_error;
    }

    rep.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace feec

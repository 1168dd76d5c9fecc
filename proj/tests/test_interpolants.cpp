#include <doctest.h>

#include <feec/interpolants.hpp>

#include "meshes.hpp"

#include <cmath>
#include <random>

using namespace feec;

namespace {

GlobalForm random_form(const DofLayout& L, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-5, 5);
    GlobalForm g = zero_form(L);
    for (auto& c : g.coeff) c = rat_of(num(rng), 1 + (rng() % 3));
    return g;
}

std::vector<LocalForm> localize_all(const GlobalForm& g)
{
    const Complex& c = *g.layout->complex;
    std::vector<LocalForm> out;
    for (int t = 0; t < c.count(c.dim()); ++t) out.push_back(localize(g, t));
    return out;
}

double coeff_error(const GlobalForm& a, const GlobalForm& b)
{
    double err = 0, scale = 1;
    for (size_t i = 0; i < a.coeff.size(); ++i) {
        err = std::max(err, std::abs(to_double(a.coeff[i] - b.coeff[i])));
        scale = std::max(scale, std::abs(to_double(b.coeff[i])));
    }
    return err / scale;
}

} // namespace

TEST_CASE("whitney interpolant is a projection and commutes with d")
{
    Complex c = testmesh::two_triangles();
    SequenceAssignment w1 = uniform_assignment(c, Family::Trimmed, 1);
    for (int k = 0; k <= 2; ++k) {
        DofLayout L = make_layout(c, w1, k, false);
        GlobalForm g = random_form(L, 100 + k);
        GlobalForm back =
            interpolate_whitney(InterpolationInput::piecewise(k, localize_all(g)), L);
        CHECK(back.coeff == g.coeff);
    }

    // d I_W = I_W d exactly, on piecewise-quadratic inputs
    SequenceAssignment q = uniform_assignment(c, Family::Trimmed, 2);
    for (int k = 0; k <= 1; ++k) {
        DofLayout Lq = make_layout(c, q, k, false);
        GlobalForm g = random_form(Lq, 200 + k);
        auto forms = localize_all(g);
        std::vector<LocalForm> dforms;
        for (const auto& w : forms) dforms.push_back(exterior_derivative(w));

        DofLayout Lw_k = make_layout(c, w1, k, false);
        DofLayout Lw_k1 = make_layout(c, w1, k + 1, false);
        GlobalForm iw = interpolate_whitney(InterpolationInput::piecewise(k, forms), Lw_k);
        GlobalForm iwd =
            interpolate_whitney(InterpolationInput::piecewise(k + 1, dforms), Lw_k1);
        RatMat D = assemble_global_d(Lw_k, Lw_k1);
        for (int i = 0; i < D.rows(); ++i) {
            Rational acc = 0;
            for (int j = 0; j < D.cols(); ++j) acc += D(i, j) * iw.coeff[j];
            CHECK(acc == iwd.coeff[i]);
        }
    }
}

TEST_CASE("whitney interpolant locality")
{
    Complex c = testmesh::two_triangles();
    DofLayout L = make_layout(c, uniform_assignment(c, Family::Trimmed, 1), 1, false);
    // a Whitney form supported on cell 0 only
    GlobalForm g = zero_form(L);
    g.coeff[L.whitney_pos[c.index_of(1, {0, 1})]] = 1;
    auto forms = localize_all(g);
    REQUIRE(forms[1].is_zero());
    GlobalForm iw = interpolate_whitney(InterpolationInput::piecewise(1, forms), L);
    CHECK(localize(iw, 1).is_zero());
    CHECK(iw.coeff == g.coeff);
}

TEST_CASE("canonical interpolant is a projection")
{
    Complex c = testmesh::two_triangles();
    unsigned seed = 31;
    for (Family fam : {Family::Trimmed, Family::Full})
        for (bool rel : {false, true})
            for (int k = 0; k <= 2; ++k) {
                int r = fam == Family::Trimmed ? 2 : 3;
                DofLayout L = make_layout(c, uniform_assignment(c, fam, r), k, rel);
                GlobalForm g = random_form(L, seed++);
                GlobalForm back = interpolate_canonical(
                    InterpolationInput::piecewise(k, localize_all(g)), L);
                CHECK(coeff_error(back, g) < 1e-10);
                // idempotence
                GlobalForm twice = interpolate_canonical(
                    InterpolationInput::piecewise(k, localize_all(back)), L);
                CHECK(coeff_error(twice, back) < 1e-10);
            }
}

TEST_CASE("canonical interpolant projection on a tetrahedral fan")
{
    Complex c = testmesh::tet_fan();
    for (int k = 0; k <= 3; ++k) {
        DofLayout L = make_layout(c, uniform_assignment(c, Family::Trimmed, 2), k, false);
        GlobalForm g = random_form(L, 400 + k);
        GlobalForm back =
            interpolate_canonical(InterpolationInput::piecewise(k, localize_all(g)), L);
        CHECK(coeff_error(back, g) < 1e-10);
    }
}

TEST_CASE("canonical interpolant commutes with d")
{
    Complex c = testmesh::two_triangles();
    SequenceAssignment hi = uniform_assignment(c, Family::Trimmed, 3);
    for (Family fam : {Family::Trimmed, Family::Full})
        for (int k = 0; k <= 1; ++k) {
            int r = fam == Family::Trimmed ? 1 : 2;
            SequenceAssignment a = uniform_assignment(c, fam, r);
            DofLayout Lk = make_layout(c, a, k, false);
            DofLayout Lk1 = make_layout(c, a, k + 1, false);

            // input of higher order than the target space
            DofLayout Lhi = make_layout(c, hi, k, false);
            GlobalForm g = random_form(Lhi, 300 + k);
            auto forms = localize_all(g);
            std::vector<LocalForm> dforms;
            for (const auto& w : forms) dforms.push_back(exterior_derivative(w));

            GlobalForm ip =
                interpolate_canonical(InterpolationInput::piecewise(k, forms), Lk);
            GlobalForm ipd =
                interpolate_canonical(InterpolationInput::piecewise(k + 1, dforms), Lk1);
            RatMat D = assemble_global_d(Lk, Lk1);
            GlobalForm dip = zero_form(Lk1);
            for (int i = 0; i < D.rows(); ++i) {
                Rational acc = 0;
                for (int j = 0; j < D.cols(); ++j) acc += D(i, j) * ip.coeff[j];
                dip.coeff[i] = acc;
            }
            CHECK(coeff_error(dip, ipd) < 1e-9);
        }
}

TEST_CASE("analytic input reproduces polynomial interpolation")
{
    Complex c = testmesh::two_triangles();
    // f(x, y) = x^2 y - y/2 as a 0-form, quadratic-in-x cubic overall
    auto phys = [&](const std::vector<int>& verts, const std::vector<double>& b) {
        double x = 0, y = 0;
        for (size_t i = 0; i < verts.size(); ++i) {
            x += b[i] * to_double(c.vertex(verts[i])[0]);
            y += b[i] * to_double(c.vertex(verts[i])[1]);
        }
        return std::pair<double, double>(x, y);
    };
    AnalyticForm f;
    f.k = 0;
    f.eval = [&](const std::vector<int>& verts, const std::vector<double>& b) {
        auto [x, y] = phys(verts, b);
        return std::vector<double>{x * x * y - y / 2};
    };
    f.eval_d = [&](const std::vector<int>& verts, const std::vector<double>& b) {
        auto [x, y] = phys(verts, b);
        double gx = 2 * x * y, gy = x * x - 0.5;
        std::vector<double> out;
        for (size_t j = 1; j < verts.size(); ++j) {
            double ex = to_double(c.vertex(verts[j])[0] - c.vertex(verts[0])[0]);
            double ey = to_double(c.vertex(verts[j])[1] - c.vertex(verts[0])[1]);
            out.push_back(gx * ex + gy * ey);
        }
        return out;
    };

    // exact counterpart: decompose the same cubic symbolically
    DofLayout L = make_layout(c, uniform_assignment(c, Family::Full, 3), 0, false);
    std::vector<LocalForm> exact;
    for (int t = 0; t < 2; ++t) {
        const auto& T = c.simplex(2, t);
        // x = sum lambda_i x_i, y = sum lambda_i y_i as linear forms
        LocalForm x(2, 0), y(2, 0);
        for (int i = 0; i <= 2; ++i) {
            MultiIndex e(2);
            e[i] = 1;
            x.add_term(e, {}, c.vertex(T[i])[0]);
            y.add_term(e, {}, c.vertex(T[i])[1]);
        }
        LocalForm fxy = wedge(wedge(x, x), y) - y * rat_of(1, 2);
        exact.push_back(fxy);
    }
    GlobalForm ge = geometric_decompose(exact, L);
    GlobalForm ga = interpolate_canonical(InterpolationInput::callable(f), L);
    CHECK(coeff_error(ga, ge) < 1e-9);
}

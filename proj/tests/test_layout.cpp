#include <doctest.h>

#include <feec/layout.hpp>

#include "meshes.hpp"

#include <random>

using namespace feec;

namespace {

GlobalForm random_form(const DofLayout& L, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-6, 6);
    GlobalForm g = zero_form(L);
    for (auto& c : g.coeff) c = rat_of(num(rng), 1 + (rng() % 4));
    return g;
}

std::vector<LocalForm> localize_all(const GlobalForm& g)
{
    const Complex& c = *g.layout->complex;
    std::vector<LocalForm> out;
    for (int t = 0; t < c.count(c.dim()); ++t) out.push_back(localize(g, t));
    return out;
}

} // namespace

TEST_CASE("direct sum: global basis is linearly independent")
{
    Complex c = testmesh::two_triangles();
    for (Family fam : {Family::Trimmed, Family::Full})
        for (bool rel : {false, true})
            for (int k = 0; k <= 2; ++k) {
                int r = 2;
                DofLayout L = make_layout(c, uniform_assignment(c, fam, r), k, rel);
                int deg = r + 1; // enough for all localized forms
                int cd = form_coordinate_dim(2, k, deg);
                RatMat M(2 * cd, L.total);
                GlobalForm unit = zero_form(L);
                for (int j = 0; j < L.total; ++j) {
                    unit.coeff[j] = 1;
                    for (int t = 0; t < 2; ++t) {
                        auto v = form_coordinates(localize(unit, t), deg);
                        for (int i = 0; i < cd; ++i) M(t * cd + i, j) = v[i];
                    }
                    unit.coeff[j] = 0;
                }
                CHECK(M.rank() == L.total);
            }
}

TEST_CASE("decompose-localize roundtrip")
{
    Complex c = testmesh::two_triangles();
    unsigned seed = 1;
    for (Family fam : {Family::Trimmed, Family::Full})
        for (bool rel : {false, true})
            for (int r = 1; r <= 2; ++r)
                for (int k = 0; k <= 2; ++k) {
                    DofLayout L = make_layout(c, uniform_assignment(c, fam, r), k, rel);
                    GlobalForm g = random_form(L, seed++);
                    GlobalForm back = geometric_decompose(localize_all(g), L);
                    CHECK(back.coeff == g.coeff);
                }
}

TEST_CASE("roundtrip on a tetrahedral fan")
{
    Complex c = testmesh::tet_fan();
    unsigned seed = 77;
    for (int k = 0; k <= 3; ++k) {
        DofLayout L = make_layout(c, uniform_assignment(c, Family::Trimmed, 2), k, false);
        GlobalForm g = random_form(L, seed++);
        GlobalForm back = geometric_decompose(localize_all(g), L);
        CHECK(back.coeff == g.coeff);
    }
}

TEST_CASE("roundtrip with non-uniform orders")
{
    Complex c = testmesh::two_triangles();
    SequenceAssignment a = uniform_assignment(c, Family::Trimmed, 2);
    // lower the order on one boundary edge and its endpoints (hierarchy keeps
    // holding since faces may have lower symbols than cells)
    int e = c.index_of(1, {0, 1});
    a.types[1][e] = SequenceType{{SpaceTag::trimmed(1), SpaceTag::trimmed(1)}};
    a.types[0][c.index_of(0, {0})] = SequenceType{{SpaceTag::trimmed(1)}};
    a.types[0][c.index_of(0, {1})] = SequenceType{{SpaceTag::trimmed(1)}};
    REQUIRE(check_hierarchy(a));
    for (int k = 0; k <= 2; ++k) {
        DofLayout L = make_layout(c, a, k, false);
        GlobalForm g = random_form(L, 5 + k);
        GlobalForm back = geometric_decompose(localize_all(g), L);
        CHECK(back.coeff == g.coeff);
    }
}

TEST_CASE("whitney forms decompose with empty interior")
{
    Complex c = testmesh::two_triangles();
    DofLayout L = make_layout(c, uniform_assignment(c, Family::Trimmed, 2), 1, false);
    GlobalForm g = zero_form(L);
    g.coeff[2] = rat_of(3, 2); // a Whitney coefficient
    GlobalForm back = geometric_decompose(localize_all(g), L);
    for (const auto& b : L.blocks)
        for (int j = 0; j < b.size; ++j) CHECK(back.coeff[b.offset + j] == 0);
    CHECK(back.coeff == g.coeff);
}

TEST_CASE("cubic scalar bubble on one triangle")
{
    Complex c = build_complex({{0, 1, 2}}, {{0, 0}, {1, 0}, {0, 1}});
    DofLayout L = make_layout(c, uniform_assignment(c, Family::Full, 3), 0, false);
    LocalForm w(2, 0);
    w.add_term(MultiIndex{1, 1, 1}, {}, 1); // lambda_0 lambda_1 lambda_2
    GlobalForm g = geometric_decompose({w}, L);
    // vanishes at the vertices and on the edges: only the interior block
    for (size_t j = 0; j < 3; ++j) CHECK(g.coeff[j] == 0);
    bool interior_nonzero = false;
    for (const auto& b : L.blocks) {
        bool iszero = true;
        for (int j = 0; j < b.size; ++j)
            if (g.coeff[b.offset + j] != 0) iszero = false;
        if (b.sdim == 2)
            interior_nonzero = !iszero;
        else
            CHECK(iszero);
    }
    CHECK(interior_nonzero);
    CHECK(localize(g, 0).same_form(w));

    // a non-bubble cubic also has vertex and edge parts
    LocalForm q(2, 0);
    q.add_term(MultiIndex{3, 0, 0}, {}, 1); // lambda_0^3
    GlobalForm gq = geometric_decompose({q}, L);
    CHECK(gq.coeff[L.whitney_pos[c.index_of(0, {0})]] == 1);
    CHECK(gq.coeff[L.whitney_pos[c.index_of(0, {1})]] == 0);
    CHECK(localize(gq, 0).same_form(q));
}

TEST_CASE("global extension of an edge bubble has matching traces")
{
    Complex c = testmesh::two_triangles();
    DofLayout L = make_layout(c, uniform_assignment(c, Family::Trimmed, 2), 0, false);
    int e = c.index_of(1, {0, 2}); // the shared diagonal
    LocalForm bubble(1, 0);
    bubble.add_term(MultiIndex{1, 1}, {}, 1);
    GlobalForm g = global_extension(L, 1, e, bubble);
    LocalForm w0 = localize(g, 0), w1 = localize(g, 1);
    CHECK(!w0.is_zero());
    const auto& E = c.simplex(1, e);
    LocalForm t0 = trace(w0, positions_in(E, c.simplex(2, 0)));
    LocalForm t1 = trace(w1, positions_in(E, c.simplex(2, 1)));
    CHECK(t0.same_form(t1));
    CHECK(t0.same_form(bubble));

    // a top-cell interior form is supported on that cell only (the scalar
    // cell bubble needs order 3)
    DofLayout L3 = make_layout(c, uniform_assignment(c, Family::Trimmed, 3), 0, false);
    const LocalBasis& tri =
        local_basis(2, SpaceTag::trimmed(3), 0, Variant::UnderlineRing);
    REQUIRE(tri.dim() > 0);
    GlobalForm gi = global_extension(L3, 2, 1, tri.forms[0]);
    CHECK(localize(gi, 0).is_zero());
    CHECK(!localize(gi, 1).is_zero());
}

TEST_CASE("decomposition failure modes")
{
    Complex c = testmesh::two_triangles();
    DofLayout L = make_layout(c, uniform_assignment(c, Family::Trimmed, 1), 0, false);
    // mismatched vertex values across the shared diagonal
    LocalForm a = LocalForm::lambda(0, 2); // value 1 at local vertex 0
    LocalForm b = LocalForm::zero(2, 0);
    b.add_term(MultiIndex{0, 0, 0}, {}, rat_of(1, 2));
    CHECK_THROWS_AS(geometric_decompose({a, b}, L), InputError);

    // non-relative data into a relative layout
    DofLayout Lr = make_layout(c, uniform_assignment(c, Family::Trimmed, 1), 0, true);
    CHECK_THROWS_AS(geometric_decompose({LocalForm::one(2), LocalForm::one(2)}, Lr),
                    InputError);

    // quadratic data into an order-1 layout
    LocalForm q(2, 0);
    q.add_term(MultiIndex{2, 0, 0}, {}, 1);
    q.add_term(MultiIndex{0, 2, 0}, {}, 1);
    q.add_term(MultiIndex{0, 0, 2}, {}, 1);
    CHECK_THROWS_AS(geometric_decompose({q, q}, L), InputError);
}

TEST_CASE("layout hash distinguishes layouts")
{
    Complex c = testmesh::two_triangles();
    DofLayout a = make_layout(c, uniform_assignment(c, Family::Trimmed, 2), 1, false);
    DofLayout b = make_layout(c, uniform_assignment(c, Family::Trimmed, 3), 1, false);
    DofLayout a2 = make_layout(c, uniform_assignment(c, Family::Trimmed, 2), 1, false);
    CHECK(a.hash != b.hash);
    CHECK(a.hash == a2.hash);
    CHECK(a.hash != make_layout(c, a.assignment, 1, true).hash);
}

TEST_CASE("global exterior derivative")
{
    Complex c = testmesh::two_triangles();
    for (Family fam : {Family::Trimmed, Family::Full})
        for (bool rel : {false, true}) {
            int r = fam == Family::Trimmed ? 2 : 3;
            SequenceAssignment a = uniform_assignment(c, fam, r);
            DofLayout L0 = make_layout(c, a, 0, rel);
            DofLayout L1 = make_layout(c, a, 1, rel);
            DofLayout L2 = make_layout(c, a, 2, rel);
            RatMat D0 = assemble_global_d(L0, L1);
            RatMat D1 = assemble_global_d(L1, L2);
            CHECK((D1 * D0).is_zero());
            if (!rel) {
                // the constant function: 1 at every vertex, no bubbles
                GlobalForm one = zero_form(L0);
                for (size_t j = 0; j < L0.whitney.size(); ++j) one.coeff[j] = 1;
                bool dz = true;
                for (int i = 0; i < D0.rows(); ++i) {
                    Rational acc = 0;
                    for (int j = 0; j < D0.cols(); ++j) acc += D0(i, j) * one.coeff[j];
                    if (acc != 0) dz = false;
                }
                CHECK(dz);
                CHECK(D0.rank() == L0.total - 1); // connected mesh
            }
        }
}

TEST_CASE("rank of d0 on the disk at order 2")
{
    Complex c = testmesh::disk();
    SequenceAssignment a = uniform_assignment(c, Family::Trimmed, 2);
    DofLayout L0 = make_layout(c, a, 0, false);
    DofLayout L1 = make_layout(c, a, 1, false);
    RatMat D0 = assemble_global_d(L0, L1);
    CHECK(D0.rank() == L0.total - 1);
}

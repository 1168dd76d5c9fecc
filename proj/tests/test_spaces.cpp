#include <doctest.h>

#include <feec/extension.hpp>
#include <feec/spaces.hpp>

#include "meshes.hpp"

using namespace feec;

TEST_CASE("space tag order")
{
    CHECK(SpaceTag::trimmed(2) < SpaceTag::full(2));
    CHECK(SpaceTag::full(2) < SpaceTag::trimmed(3));
    CHECK(SpaceTag::trimmed(1) == SpaceTag::trimmed(1));
}

TEST_CASE("admissibility")
{
    auto seq = [](std::initializer_list<SpaceTag> t) {
        return SequenceType{std::vector<SpaceTag>(t)};
    };
    // P(k) = P_r forces P(k+1) in {P_r^-, P_{r-1}}; P_2, P_1, P_1 breaks at
    // the second step (P_1 -> P_1 not allowed)
    CHECK(!check_admissible(seq({SpaceTag::full(2), SpaceTag::full(1), SpaceTag::full(1)})));
    CHECK(check_admissible(seq({SpaceTag::full(2), SpaceTag::full(1), SpaceTag::full(0)})));
    CHECK(!check_admissible(seq({SpaceTag::full(1), SpaceTag::full(2)})));
    CHECK(check_admissible(
        seq({SpaceTag::trimmed(2), SpaceTag::trimmed(2), SpaceTag::trimmed(2)})));
    CHECK(check_admissible(
        seq({SpaceTag::full(2), SpaceTag::trimmed(2), SpaceTag::full(1)})));
}

TEST_CASE("hierarchy")
{
    Complex c = testmesh::two_triangles();
    SequenceAssignment a = uniform_assignment(c, Family::Trimmed, 2);
    CHECK(check_hierarchy(a));
    CHECK(check_assignment_admissible(a));

    SequenceAssignment af = uniform_assignment(c, Family::Full, 3);
    CHECK(check_hierarchy(af));
    CHECK(check_assignment_admissible(af));

    // raise the order on one edge above its triangles -> violated
    a.types[1][0] = SequenceType{{SpaceTag::trimmed(3), SpaceTag::trimmed(3)}};
    CHECK(!check_hierarchy(a));
}

TEST_CASE("basis dimensions match the closed forms")
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n; ++k) {
            for (int r = 0; r <= 3; ++r)
                CHECK(local_basis(n, SpaceTag::full(r), k, Variant::Plain).dim() ==
                      dim_full(n, k, r));
            for (int r = 1; r <= 3; ++r)
                CHECK(local_basis(n, SpaceTag::trimmed(r), k, Variant::Plain).dim() ==
                      dim_trimmed(n, k, r));
        }

    CHECK(local_basis(3, SpaceTag::full(2), 1, Variant::Plain).dim() == 30);
    CHECK(local_basis(2, SpaceTag::trimmed(1), 1, Variant::Plain).dim() == 3);
    CHECK(local_basis(2, SpaceTag::full(3), 0, Variant::Ring).dim() == 1);
}

TEST_CASE("ring dimensions: rank oracle vs formulas")
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n; ++k) {
            for (int r = 0; r <= 3; ++r)
                CHECK(local_basis(n, SpaceTag::full(r), k, Variant::Ring).dim() ==
                      dim_ring_full(n, k, r));
            for (int r = 1; r <= 3; ++r)
                CHECK(local_basis(n, SpaceTag::trimmed(r), k, Variant::Ring).dim() ==
                      dim_ring_trimmed(n, k, r));
        }
    // the printed full-family formula disagrees with the rank oracle here
    CHECK(dim_ring_full_printed(2, 0, 3) == 6);
    CHECK(dim_ring_full(2, 0, 3) == 1);
}

TEST_CASE("ring traces vanish, underline integrals vanish")
{
    for (int n = 2; n <= 3; ++n)
        for (int k = 0; k < n; ++k) {
            const LocalBasis& b = local_basis(n, SpaceTag::full(3), k, Variant::Ring);
            for (const LocalForm& w : b.forms)
                for (int f = 0; f <= n; ++f) {
                    std::vector<int> face;
                    for (int v = 0; v <= n; ++v)
                        if (v != f) face.push_back(v);
                    CHECK(trace(w, face).same_form(LocalForm::zero(n - 1, k)));
                }
        }

    const LocalBasis& u = local_basis(2, SpaceTag::full(2), 0, Variant::Underline);
    CHECK(u.dim() == 5);
    for (const LocalForm& w : u.forms) {
        Rational v = 0;
        for (const auto& [key, c] : w.terms())
            v += c * integrate_monomial_over_vol(key.first, 2);
        CHECK(v == 0);
    }

    const LocalBasis& ur = local_basis(2, SpaceTag::trimmed(2), 2, Variant::UnderlineRing);
    CHECK(ur.dim() == dim_ring_trimmed(2, 2, 2) - 1);
    for (const LocalForm& w : ur.forms) CHECK(integrate_form_ref(w) == 0);
}

static bool space_contains(const LocalBasis& big, const LocalBasis& small, int deg)
{
    SpanBuilder sb(form_coordinate_dim(big.n, big.k, deg));
    for (const LocalForm& w : big.forms) sb.insert(form_coordinates(w, deg));
    for (const LocalForm& w : small.forms)
        if (!sb.coordinates(form_coordinates(w, deg))) return false;
    return true;
}

TEST_CASE("inclusions P_r in P_{r+1}- in P_{r+1}")
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n; ++k)
            for (int r = 0; r <= 2; ++r) {
                const auto& full_r = local_basis(n, SpaceTag::full(r), k, Variant::Plain);
                const auto& tri = local_basis(n, SpaceTag::trimmed(r + 1), k, Variant::Plain);
                const auto& full_r1 = local_basis(n, SpaceTag::full(r + 1), k, Variant::Plain);
                CHECK(space_contains(tri, full_r, r + 1));
                CHECK(space_contains(full_r1, tri, r + 1));
            }
}

TEST_CASE("d ranges agree for trimmed and full")
{
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k < n; ++k)
            for (int r = 1; r <= 3; ++r) {
                int deg = r; // d lowers polynomial degree by one; r is safe
                SpanBuilder sf(form_coordinate_dim(n, k + 1, deg));
                for (const LocalForm& w :
                     local_basis(n, SpaceTag::full(r), k, Variant::Plain).forms)
                    sf.insert(form_coordinates(exterior_derivative(w), deg));
                SpanBuilder st(form_coordinate_dim(n, k + 1, deg));
                int extra = 0;
                for (const LocalForm& w :
                     local_basis(n, SpaceTag::trimmed(r), k, Variant::Plain).forms) {
                    auto v = form_coordinates(exterior_derivative(w), deg);
                    st.insert(v);
                    if (!sf.coordinates(v)) ++extra;
                }
                CHECK(extra == 0);
                CHECK(sf.rank() == st.rank());
            }
}

TEST_CASE("extension: identity and whitney lift")
{
    // iota = identity is the identity operator
    LocalForm w(2, 1);
    w.add_term(MultiIndex{1, 1, 0}, {1}, 1);
    w.add_term(MultiIndex{0, 0, 2}, {2}, rat_of(-2, 3));
    CHECK(ext_full(w, 2, {0, 1, 2}, 2).same_form(w));
    LocalForm phi = whitney_form(AltIndex{0, 1}, 2);
    CHECK(ext_trimmed(phi, 1, {0, 1, 2}, 2).same_form(phi));

    // edge Whitney form extends to the triangle's Whitney form of that edge
    LocalForm edge_phi = whitney_form(AltIndex{0, 1}, 1);
    CHECK(ext_trimmed(edge_phi, 1, {0, 1}, 2).same_form(whitney_form(AltIndex{0, 1}, 2)));
    CHECK(ext_trimmed(edge_phi, 1, {1, 2}, 2).same_form(whitney_form(AltIndex{1, 2}, 2)));
    CHECK(ext_trimmed(edge_phi, 1, {0, 2}, 3).same_form(whitney_form(AltIndex{0, 2}, 3)));
}

TEST_CASE("extension: trace recovery and locality")
{
    // tr_F ext_F = identity on ring elements, and traces on faces not
    // containing F vanish
    LocalForm bubble(1, 0); // lambda_0 lambda_1 on an edge
    bubble.add_term(MultiIndex{1, 1}, {}, 1);

    for (int family = 0; family < 2; ++family) {
        LocalForm e = family ? ext_trimmed(bubble, 2, {0, 1}, 2)
                             : ext_full(bubble, 2, {0, 1}, 2);
        CHECK(trace(e, {0, 1}).same_form(bubble));
        CHECK(trace(e, {0, 2}).is_zero());
        CHECK(trace(e, {1, 2}).is_zero());
    }

    // same for a 1-form bubble on a face of a tetrahedron
    for (const LocalForm& w :
         local_basis(2, SpaceTag::trimmed(2), 1, Variant::Ring).forms) {
        LocalForm e = ext_trimmed(w, 2, {0, 1, 3}, 3);
        CHECK(trace(e, {0, 1, 3}).same_form(w));
        CHECK(trace(e, {0, 1, 2}).is_zero());
        CHECK(trace(e, {0, 2, 3}).is_zero());
        CHECK(trace(e, {1, 2, 3}).is_zero());
    }
    for (const LocalForm& w :
         local_basis(2, SpaceTag::full(2), 1, Variant::Ring).forms) {
        LocalForm e = ext_full(w, 2, {0, 2, 3}, 3);
        CHECK(trace(e, {0, 2, 3}).same_form(w));
        CHECK(trace(e, {0, 1, 2}).is_zero());
    }
}

TEST_CASE("extension: consistency through an intermediate face")
{
    // tr_{T -> F} ext_{f -> T} = ext_{f -> F} for f <= F <= T
    // f = edge {0,1} of the tetrahedron, F = face {0,1,2}
    for (int r = 1; r <= 3; ++r) {
        for (const LocalForm& w :
             local_basis(1, SpaceTag::full(r), 1, Variant::Plain).forms) {
            LocalForm via_T = trace(ext_full(w, r, {0, 1}, 3), {0, 1, 2});
            CHECK(via_T.same_form(ext_full(w, r, {0, 1}, 2)));
        }
        for (const LocalForm& w :
             local_basis(1, SpaceTag::trimmed(r), 0, Variant::Plain).forms) {
            LocalForm via_T = trace(ext_trimmed(w, r, {0, 1}, 3), {0, 1, 2});
            CHECK(via_T.same_form(ext_trimmed(w, r, {0, 1}, 2)));
        }
    }
    // f itself an intermediate face: F = {1,2,3} inside T, f = {1,3}
    LocalForm w(1, 1);
    w.add_term(MultiIndex{2, 0}, {1}, 1);
    LocalForm via_T = trace(ext_full(w, 2, {1, 3}, 3), {1, 2, 3});
    CHECK(via_T.same_form(ext_full(w, 2, {0, 2}, 2)));
}

#include <doctest.h>

#include <feec/io.hpp>

#include "meshes.hpp"

#include <random>

using namespace feec;
using nlohmann::json;

namespace {

GlobalForm random_form(const DofLayout& L, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-6, 6);
    GlobalForm g = zero_form(L);
    for (auto& c : g.coeff) c = rat_of(num(rng), 1 + (rng() % 4));
    return g;
}

} // namespace

TEST_CASE("mesh JSON reproduces the hand-built complexes")
{
    // two_triangles: unit square split along the diagonal (0,0)-(1,1).
    json j = {
        {"vertices", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
        {"cells", {{0, 1, 2}, {0, 2, 3}}},
        {"boundary", "auto"},
    };
    Complex c = mesh_from_json(j);
    Complex ref = testmesh::two_triangles();
    REQUIRE(c.dim() == ref.dim());
    for (int m = 0; m <= c.dim(); ++m) {
        REQUIRE(c.count(m) == ref.count(m));
        for (int i = 0; i < c.count(m); ++i) {
            CHECK(c.simplex(m, i) == ref.simplex(m, i));
            CHECK(c.in_boundary(m, i) == ref.in_boundary(m, i));
        }
    }

    // Coordinates are read exactly: 0.5 is the rational 1/2 and "1/3" parses.
    json jr = {
        {"vertices", {{0, 0}, {"1/3", 0}, {0.5, 0.25}}},
        {"cells", {{0, 1, 2}}},
    };
    Complex cr = mesh_from_json(jr);
    CHECK(cr.vertex(1)[0] == rat_of(1, 3));
    CHECK(cr.vertex(2)[0] == rat_of(1, 2));
    CHECK(cr.vertex(2)[1] == rat_of(1, 4));
}

TEST_CASE("mesh JSON accepts an explicit boundary list")
{
    json j = {
        {"vertices", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
        {"cells", {{0, 1, 2}, {0, 2, 3}}},
        {"boundary", {{0, 1}, {1, 2}}},
    };
    Complex c = mesh_from_json(j);
    int marked = 0;
    for (int i = 0; i < c.count(1); ++i)
        if (c.in_boundary(1, i)) ++marked;
    CHECK(marked == 2);
    CHECK(c.in_boundary(0, 0));
    CHECK(c.in_boundary(0, 1));
    CHECK(c.in_boundary(0, 2));
    CHECK(!c.in_boundary(0, 3));
}

TEST_CASE("malformed mesh JSON is an input error")
{
    CHECK_THROWS_AS(mesh_from_json(json{{"vertices", json::array()}}), InputError);
    CHECK_THROWS_AS(
        mesh_from_json(json{{"vertices", {{0, 0}}}, {"cells", "oops"}}), InputError);
    CHECK_THROWS_AS(
        mesh_from_json(json{{"vertices", {{0, 0}, {1, 0}, {0, 1}}},
                            {"cells", {{0, 1, 2}}},
                            {"boundary", "everything"}}),
        InputError);
    CHECK_THROWS_AS(load_mesh("/nonexistent/mesh.json"), InputError);
}

TEST_CASE("order spec JSON: defaults and overrides")
{
    Complex c = testmesh::two_triangles();

    json j = {{"default", {{"family", "trimmed"}, {"order", 2}}}};
    SequenceAssignment a = order_spec_from_json(j, c);
    for (int m = 0; m <= 2; ++m)
        for (int i = 0; i < c.count(m); ++i)
            for (int k = 0; k <= m; ++k)
                CHECK(a.tag(m, i, k) == SpaceTag::trimmed(2));

    json jf = {{"default", {{"family", "full"}, {"order", 3}}}};
    SequenceAssignment af = order_spec_from_json(jf, c);
    CHECK(af.tag(2, 0, 0) == SpaceTag::full(3));
    CHECK(af.tag(2, 0, 1) == SpaceTag::full(2));
    CHECK(af.tag(2, 0, 2) == SpaceTag::full(1));

    json jo = {
        {"default", {{"family", "trimmed"}, {"order", 2}}},
        {"overrides",
         {{{"simplex", {0, 2, 3}}, {"k", 1}, {"family", "trimmed"}, {"order", 1}}}},
    };
    SequenceAssignment ao = order_spec_from_json(jo, c);
    int idx = c.index_of(2, {0, 2, 3});
    REQUIRE(idx >= 0);
    CHECK(ao.tag(2, idx, 1) == SpaceTag::trimmed(1));
    CHECK(ao.tag(2, idx, 0) == SpaceTag::trimmed(2));
    CHECK(ao.tag(2, 1 - idx, 1) == SpaceTag::trimmed(2));
}

TEST_CASE("order spec JSON rejects bad input")
{
    Complex c = testmesh::two_triangles();
    CHECK_THROWS_AS(order_spec_from_json(json::object(), c), InputError);
    CHECK_THROWS_AS(
        order_spec_from_json(json{{"default", {{"family", "bogus"}, {"order", 1}}}}, c),
        InputError);
    CHECK_THROWS_AS(
        order_spec_from_json(json{{"default", {{"family", "trimmed"}, {"order", 0}}}}, c),
        InputError);
    // A full default of order 1 cannot supply P_{1-k} at every degree on triangles.
    CHECK_THROWS_AS(
        order_spec_from_json(json{{"default", {{"family", "full"}, {"order", 1}}}}, c),
        InputError);
    CHECK_THROWS_AS(order_spec_from_json(
                        json{{"default", {{"family", "trimmed"}, {"order", 2}}},
                             {"overrides",
                              {{{"simplex", {0, 9}},
                                {"k", 1},
                                {"family", "trimmed"},
                                {"order", 1}}}}},
                        c),
                    InputError);
}

TEST_CASE("global form JSON round-trips exactly")
{
    Complex c = testmesh::disk();
    auto a = uniform_assignment(c, Family::Trimmed, 3);
    for (int k = 0; k <= 2; ++k) {
        auto L = std::make_shared<DofLayout>(make_layout(c, a, k, false));
        GlobalForm g = random_form(*L, 100 + k);
        json j = form_to_json(g);
        CHECK(j.at("layout-hash").get<std::string>() == L->hash);
        GlobalForm back = form_from_json(j, *L);
        REQUIRE(back.coeff.size() == g.coeff.size());
        for (size_t i = 0; i < g.coeff.size(); ++i) CHECK(back.coeff[i] == g.coeff[i]);
    }
}

TEST_CASE("global form JSON validates against the layout")
{
    Complex c = testmesh::two_triangles();
    auto a = uniform_assignment(c, Family::Trimmed, 2);
    auto L = std::make_shared<DofLayout>(make_layout(c, a, 1, false));
    GlobalForm g = random_form(*L, 5);
    json j = form_to_json(g);

    json wrong_hash = j;
    wrong_hash["layout-hash"] = "nope";
    CHECK_THROWS_AS(form_from_json(wrong_hash, *L), InputError);

    json short_whitney = j;
    short_whitney["whitney"].erase(0);
    CHECK_THROWS_AS(form_from_json(short_whitney, *L), InputError);

    json bad_key = j;
    bad_key["interior"]["7,8,9"] = json::array({"1"});
    CHECK_THROWS_AS(form_from_json(bad_key, *L), InputError);

    // A different layout of the same total size is still rejected by hash.
    auto a2 = uniform_assignment(c, Family::Trimmed, 2);
    auto L2 = std::make_shared<DofLayout>(make_layout(c, a2, 1, true));
    CHECK(L2->hash != L->hash);
    CHECK_THROWS_AS(form_from_json(j, *L2), InputError);
}

TEST_CASE("rational JSON accepts integers, decimals, and fraction strings")
{
    CHECK(rational_from_json(json(7)) == rat_of(7, 1));
    CHECK(rational_from_json(json(-0.25)) == rat_of(-1, 4));
    CHECK(rational_from_json(json("22/7")) == rat_of(22, 7));
    CHECK_THROWS_AS(rational_from_json(json::array()), InputError);
    CHECK(rational_from_json(json(rational_to_json(rat_of(-3, 8)))) == rat_of(-3, 8));
}

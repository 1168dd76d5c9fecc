#include <doctest.h>

#include <feec/ratmat.hpp>

using namespace feec;

TEST_CASE("scalar helpers")
{
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(6, 2) == 15);
    CHECK(binomial(4, 7) == 0);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial_l(10, 5) == 252);

    CHECK(rat_parse("3") == 3);
    CHECK(rat_parse("-1.25") == rat_of(-5, 4));
    CHECK(rat_parse("0.1") == rat_of(1, 10));
    CHECK(rat_to_string(rat_of(-5, 4)) == "-5/4");
    CHECK(rat_to_string(Rational(7)) == "7");

    CHECK(rat_of(0.5) == rat_of(1, 2));
}

TEST_CASE("rank, nullspace, solve")
{
    RatMat A(3, 4);
    // rows: [1 2 0 1; 0 1 1 0; 1 3 1 1] (third = first + second)
    int vals[3][4] = {{1, 2, 0, 1}, {0, 1, 1, 0}, {1, 3, 1, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) A(i, j) = vals[i][j];

    CHECK(A.rank() == 2);
    RatMat N = A.nullspace();
    CHECK(N.cols() == 2);
    // each nullspace column really annihilates A
    for (int c = 0; c < N.cols(); ++c)
        for (int i = 0; i < 3; ++i) {
            Rational acc = 0;
            for (int j = 0; j < 4; ++j) acc += A(i, j) * N(j, c);
            CHECK(acc == 0);
        }

    auto x = A.solve({1, 1, 2});
    REQUIRE(x.has_value());
    for (int i = 0; i < 3; ++i) {
        Rational acc = 0;
        for (int j = 0; j < 4; ++j) acc += A(i, j) * (*x)[j];
        CHECK(acc == ((i == 2) ? 2 : 1));
    }
    CHECK(!A.solve({1, 1, 3}).has_value()); // inconsistent

    CHECK(A.independent_columns() == std::vector<int>{0, 1});

    RatMat I = RatMat::identity(3);
    CHECK((I * A).rank() == 2);
    CHECK((A - A).is_zero());
    CHECK(A.transpose().rank() == 2);
}

TEST_CASE("span builder")
{
    SpanBuilder sb(3);
    CHECK(sb.insert({1, 0, 1}));
    CHECK(sb.insert({0, 2, 0}));
    CHECK(!sb.insert({2, 2, 2})); // = 2*first + second
    CHECK(sb.rank() == 2);

    auto c = sb.coordinates({3, -2, 3});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 3);
    CHECK((*c)[1] == -1);

    CHECK(!sb.coordinates({0, 0, 1}).has_value());

    // zero vector is always in the span with zero coordinates
    auto z = sb.coordinates({0, 0, 0});
    REQUIRE(z.has_value());
    CHECK((*z)[0] == 0);
    CHECK((*z)[1] == 0);
}

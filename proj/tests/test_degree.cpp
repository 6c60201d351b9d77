#include <catch2/catch_amalgamated.hpp>

#include "kgraph/degree.hpp"
#include "kgraph/rational.hpp"

using namespace kgraph;

TEST_CASE("degree_residue componentwise mod") {
    CHECK(degree_residue(Degree{5, 7}, Degree{3, 4}) == Degree{2, 3});
    CHECK(degree_residue(Degree{0, 0}, Degree{3, 4}) == Degree{0, 0});
    CHECK(degree_residue(Degree{6, 8}, Degree{3, 4}) == Degree{0, 0});
    CHECK_THROWS(degree_residue(Degree{1, 2}, Degree{3}));      // rank mismatch
    CHECK_THROWS(degree_residue(Degree{1, 2}, Degree{3, 0}));   // zero modulus
}

TEST_CASE("degree_join coordinatewise maximum") {
    CHECK(degree_join(Degree{2, 5}, Degree{4, 1}) == Degree{4, 5});
    CHECK(degree_join(Degree{0, 0}, Degree{0, 0}) == Degree{0, 0});
    CHECK(degree_join(Degree{3}, Degree{3}) == Degree{3});
    CHECK_THROWS(degree_join(Degree{1}, Degree{1, 2}));
}

TEST_CASE("order relations: <= is coordinatewise, < is strict coordinatewise") {
    CHECK(leq(Degree{1, 2}, Degree{1, 2}));
    CHECK(leq(Degree{0, 2}, Degree{1, 2}));
    CHECK_FALSE(lt_strict(Degree{0, 2}, Degree{1, 2}));  // not strict in coord 2
    CHECK(lt_strict(Degree{0, 1}, Degree{1, 2}));
    CHECK_FALSE(leq(Degree{2, 0}, Degree{1, 2}));
}

TEST_CASE("degree residue is H_n-invariant") {
    // residue(m + h, n) == residue(m, n) for h in H_n
    Degree n{3, 4};
    for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = 0; b < 3; ++b) {
            Degree h{3 * a, 4 * b};
            for_each_degree_leq(Degree{6, 6}, [&](const Degree& m) {
                CHECK(degree_residue(m + h, n) == degree_residue(m, n));
            });
        }
}

TEST_CASE("checked arithmetic") {
    Degree big{0xffffffffu};
    CHECK_THROWS_AS(big + Degree{1}, std::overflow_error);
    CHECK_THROWS(Degree{1} - Degree{2});
    CHECK_THROWS(Degree(std::vector<std::uint32_t>{}));  // rank 0
}

TEST_CASE("ResidueClass canonical representative") {
    ResidueClass rc(Degree{5, 7}, Degree{3, 4});
    CHECK(rc.representative == Degree{2, 3});
    CHECK(lt_strict(rc.representative, rc.modulus));
}

TEST_CASE("degree box enumeration is lexicographic and complete") {
    std::vector<Degree> seen;
    for_each_degree_leq(Degree{2, 1}, [&](const Degree& d) { seen.push_back(d); });
    REQUIRE(seen.size() == 6);
    CHECK(seen.front() == Degree{0, 0});
    CHECK(seen.back() == Degree{2, 1});
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(lex_less(seen[i - 1], seen[i]));

    std::size_t strict = 0;
    for_each_degree_lt(Degree{3, 2}, [&](const Degree&) { ++strict; });
    CHECK(strict == 6);  // degrees with d1 < 3 and d2 < 2

    std::size_t none = 0;
    for_each_degree_lt(Degree{3, 0}, [&](const Degree&) { ++none; });
    CHECK(none == 0);
}

TEST_CASE("rational arithmetic is exact and normalized") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(-1, 2).abs() == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(7, 1).to_string() == "7");
    CHECK(Rational(22, 7).to_string() == "22/7");
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1, 3) / Rational(0));
}

TEST_CASE("rational overflow is detected") {
    Rational huge(INT64_MAX, 1);
    CHECK_THROWS_AS(huge * huge, std::overflow_error);
}

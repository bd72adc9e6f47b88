#include "doctest.h"
#include "h3/abres.hpp"
#include "h3/emhom.hpp"
#include "h3/gamma.hpp"
#include "test_support.hpp"

using namespace h3;

TEST_CASE("bar of the group ring is a commutative dga")
{
    for (const FgAb& a : {FgAb({2}), FgAb({3}), FgAb({4}), FgAb({2, 2})}) {
        Dga c = bar_of_group_ring(a, 5);
        CHECK(c.d_squared_zero());
        CHECK(c.leibniz(5));
        CHECK(c.associative(4));
        CHECK(c.commutative(4));
    }
    Dga t = bar_of_group_ring(FgAb::trivial(), 5);
    for (size_t n = 1; n <= 4; ++n)
        CHECK(t.homology(n).is_trivial());
}

TEST_CASE("group ring bar homology matches the abelian engine")
{
    for (const FgAb& a : test::finite_abelian_groups(9)) {
        Dga c = bar_of_group_ring(a, 5);
        AbelianComplex ac = AbelianComplex::of(a, 5);
        for (size_t n = 0; n <= 4; ++n)
            CHECK_MESSAGE(c.homology(n).isomorphic(ac.homology(n).group()), a.str() << " degree " << n);
    }
    Dga z3 = bar_of_group_ring(FgAb({3}), 5);
    CHECK(z3.homology(1).isomorphic(FgAb({3})));
    CHECK(z3.homology(2).is_trivial());
}

TEST_CASE("second bar construction")
{
    for (const FgAb& a : {FgAb({2}), FgAb({3}), FgAb({2, 2})}) {
        Dga b = bar_construction(bar_of_group_ring(a, 4), 5);
        CHECK(b.d_squared_zero());
        CHECK(b.leibniz(5));
        CHECK(b.associative(5));
        CHECK(b.commutative(5));
    }
    CHECK_THROWS(bar_construction(bar_of_group_ring(FgAb({2}), 3), 5));
}

TEST_CASE("homology of K(A,2)")
{
    for (const FgAb& a : test::finite_abelian_groups(9)) {
        auto h = homology_k_a_2(a);
        CHECK(h[0].isomorphic(FgAb::free(1)));
        CHECK(h[1].is_trivial());
        CHECK_MESSAGE(h[2].isomorphic(a), a.str());
        CHECK_MESSAGE(h[3].is_trivial(), a.str());
        CHECK_MESSAGE(h[4].isomorphic(gamma_oracle(a).carrier()), a.str());
    }
    CHECK(h_of_k_a_2(FgAb({2}), 4).isomorphic(FgAb({4})));
    CHECK(h_of_k_a_2(FgAb({3}), 4).isomorphic(FgAb({3})));
    CHECK(h_of_k_a_2(FgAb({2}), 2).isomorphic(FgAb({2})));
    CHECK_THROWS_AS(h_of_k_a_2(FgAb({10}), 4), intlin::ResourceLimitError);
    CHECK_THROWS_AS(h_of_k_a_2(FgAb({}, 1), 4), std::domain_error);
}

TEST_CASE("homology of K(A,3) in the stable range")
{
    for (const FgAb& a : {FgAb({2}), FgAb({3}), FgAb({4}), FgAb({2, 2})}) {
        auto h = homology_k_a_3(a);
        CHECK(h[1].is_trivial());
        CHECK(h[2].is_trivial());
        CHECK_MESSAGE(h[3].isomorphic(a), a.str());
        CHECK_MESSAGE(h[4].is_trivial(), a.str());
        CHECK_MESSAGE(h[5].isomorphic(ModTwo(a).group()), a.str());
    }
}

#include <random>

#include "doctest.h"
#include "h3/gamma.hpp"
#include "test_support.hpp"

using namespace h3;

namespace {

std::vector<FgAb> gamma_family()
{
    std::vector<FgAb> out;
    for (int n = 2; n <= 12; ++n)
        out.emplace_back(IntVec{n});
    out.emplace_back(IntVec{2, 2});
    out.emplace_back(IntVec{2, 4});
    out.emplace_back(IntVec{3, 3});
    out.emplace_back(IntVec{2, 2, 2});
    return out;
}

void require_passed(const Report& r)
{
    INFO(r.text());
    CHECK(r.passed());
}

} // namespace

TEST_CASE("Gamma of small groups from the oracle presentation")
{
    CHECK(gamma_oracle(FgAb({2})).carrier().isomorphic(FgAb({4})));
    CHECK(gamma_oracle(FgAb({4})).carrier().isomorphic(FgAb({8})));
    CHECK(gamma_oracle(FgAb({3})).carrier().isomorphic(FgAb({3})));
    CHECK(gamma_oracle(FgAb::trivial()).carrier().is_trivial());
    CHECK(gamma_oracle(FgAb({2, 2})).carrier().isomorphic(FgAb({2, 4, 4})));
    CHECK_THROWS_AS(gamma_oracle(FgAb({2, 2, 2}), 4), intlin::ResourceLimitError);
    CHECK_THROWS(gamma_oracle(FgAb::free(1)));
}

TEST_CASE("structural Gamma of Z is the quadratic form n^2")
{
    GammaGroup g = gamma_structural(FgAb::free(1));
    REQUIRE(g.carrier().isomorphic(FgAb::free(1)));
    Element one = g.source().gen(0);
    for (int n = -6; n <= 6; ++n) {
        Element x = g.source().element({n});
        CHECK(g.gamma_of(x) == Integer(n * n) * g.gamma_of(one));
    }
    CHECK(gamma_structural(FgAb({4})).carrier().isomorphic(FgAb({8})));
    CHECK(gamma_structural(FgAb({2, 2})).carrier().isomorphic(FgAb({2, 4, 4})));
}

TEST_CASE("oracle and structural models agree")
{
    for (const auto& a : gamma_family()) {
        CAPTURE(a.str());
        require_passed(compare_gamma_models(a));
    }
    for (const auto& a : test::finite_abelian_groups(16)) {
        CAPTURE(a.str());
        CHECK(gamma_oracle(a).carrier().isomorphic(gamma_structural(a).carrier()));
    }
}

TEST_CASE("GammaGroup invariants")
{
    for (const auto& a : {FgAb({2, 4}), FgAb({3, 3}), FgAb({6})}) {
        for (const auto& g : {gamma_oracle(a), gamma_structural(a)}) {
            for (const auto& x : a.elements()) {
                CHECK(g.gamma_of(x) == g.gamma_of(-x));
                CHECK(g.phi()(g.gamma_of(x)) == g.mod_two().reduce(x));
                CHECK(g.psi()(g.gamma_of(x)) == g.tensor().elem(x, x));
                for (const auto& y : a.elements()) {
                    CHECK(g.pairing(x, y) == g.pairing(y, x));
                    CHECK(g.bracket()(g.tensor().elem(x, y)) == g.pairing(x, y));
                    CHECK(g.pairing(x + y, x) == g.pairing(x, x) + g.pairing(y, x));
                }
            }
        }
    }
    GammaGroup z = gamma_structural(FgAb({4}, 1));
    CHECK_THROWS_AS(z.gamma_of(FgAb({4}).gen(0)), ParentMismatch);
}

TEST_CASE("Gamma is functorial and Phi, Psi are natural")
{
    std::mt19937 rng(11);
    FgAb a({2, 4}), b({4}), c({2, 8});
    GammaGroup ga = gamma_structural(a), gb = gamma_structural(b), gc = gamma_structural(c);
    GammaGroup oa = gamma_oracle(a);
    CHECK(ga.induced(ga, FgAbHom::identity(a)) == FgAbHom::identity(ga.carrier()));
    for (int k = 0; k < 10; ++k) {
        FgAbHom f = test::random_hom(rng, a, b), g = test::random_hom(rng, b, c);
        FgAbHom gf = ga.induced(gb, f);
        CHECK(ga.induced(gc, compose(g, f)) == compose(gb.induced(gc, g), gf));
        for (const auto& x : a.elements())
            CHECK(gf(ga.gamma_of(x)) == gb.gamma_of(f(x)));
        CHECK(compose(gb.phi(), gf) == compose(ga.mod_two().induced(gb.mod_two(), f), ga.phi()));
        CHECK(compose(gb.psi(), gf) == compose(ga.tensor().induced(gb.tensor(), f, f), ga.psi()));
        // the same map computed from the oracle side
        FgAbHom iso = oa.induced(ga, FgAbHom::identity(a));
        CHECK(oa.induced(gb, f) == compose(gf, iso));
    }
    GammaGroup gz = gamma_structural(FgAb::free(2));
    FgAbHom m(FgAb::free(2), FgAb::free(2), IntMat{{1, 2}, {3, 5}});
    FgAbHom gm = gz.induced(gz, m);
    CHECK(gm.is_iso());
    Element x = gz.source().element({2, -1});
    CHECK(gm(gz.gamma_of(x)) == gz.gamma_of(m(x)));
}

TEST_CASE("kernel of Psi")
{
    CHECK(ker_psi(FgAb::free(1)).sub.is_trivial());
    CHECK(ker_psi(FgAb({2})).sub.isomorphic(FgAb({2})));
    CHECK(ker_psi(FgAb({3})).sub.is_trivial());
    CHECK(ker_psi(FgAb({4})).sub.isomorphic(FgAb({2})));
    for (const auto& a : test::finite_abelian_groups(32)) {
        auto k = ker_psi(a);
        for (size_t i = 0; i < k.sub.num_gens(); ++i)
            CHECK(k.sub.gen_order(i) == Integer(2));
    }
}

TEST_CASE("exact sequences and composite identities")
{
    for (const auto& a : gamma_family()) {
        CAPTURE(a.str());
        require_passed(verify_gamma_sequences(a));
        require_passed(verify_composites(a));
        require_passed(ker_psi_to_mod2_is_zero(a));
    }
    for (const auto& a : {FgAb::free(1), FgAb::free(2), FgAb({2}, 1), FgAb::trivial()}) {
        CAPTURE(a.str());
        require_passed(verify_gamma_sequences(a));
        require_passed(verify_composites(a));
    }
    auto r = verify_gamma_sequences(FgAb::free(1));
    CHECK(r.invariants()["wedge2(A)"] == "0");
    CHECK(r.invariants()["A/2"] == "Z/2");
}

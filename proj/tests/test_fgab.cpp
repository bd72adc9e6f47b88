#include <random>

#include "doctest.h"
#include "h3/chain.hpp"
#include "h3/fgab.hpp"
#include "test_support.hpp"

using namespace h3;

TEST_CASE("from_relations examples")
{
    CHECK(from_relations(IntMat{{2}}).first.isomorphic(FgAb({2})));
    CHECK(from_relations(IntMat(0, 2)).first.isomorphic(FgAb::free(2)));
    auto [g, proj] = from_relations(IntMat{{2, 0}, {0, 4}, {2, 4}});
    CHECK(g.isomorphic(FgAb({2, 4})));
    CHECK(proj.is_surjective());
    // idempotent up to canonical form
    CHECK(from_relations(g.relation_matrix().transpose()).first.isomorphic(g));
}

TEST_CASE("group descriptions parse")
{
    CHECK(FgAb::parse("Z/2+Z/4").isomorphic(FgAb({2, 4})));
    CHECK(FgAb::parse("6, 4").isomorphic(FgAb({2, 12})));
    CHECK(FgAb::parse("Z^2 + Z/3").isomorphic(FgAb({3}, 2)));
    CHECK(FgAb::parse("0").is_trivial());
    CHECK(FgAb({2, 4}, 1).str() == "Z/2 + Z/4 + Z");
    CHECK_THROWS(FgAb({4, 2}));
}

TEST_CASE("elements carry their parent")
{
    FgAb a = FgAb({4}).named("A");
    FgAb b = FgAb({4}).named("B");
    CHECK(a.gen(0) + a.gen(0) == a.element({2}));
    CHECK_THROWS_AS(a.gen(0) + b.gen(0), ParentMismatch);
    CHECK_THROWS_AS(a.gen(0) + FgAb({2}).gen(0), ParentMismatch);
    CHECK(a.element({6}).order() == Integer(2));
    CHECK(a.elements().size() == 4);
}

TEST_CASE("tensor products")
{
    CHECK(Tensor(FgAb({4}), FgAb({6})).group().isomorphic(FgAb({2})));
    CHECK(Tensor(FgAb::free(1), FgAb({3, 6})).group().isomorphic(FgAb({3, 6})));
    CHECK(Tensor(FgAb({2, 2}), FgAb({2})).group().isomorphic(FgAb({2, 2})));
    auto groups = test::small_groups();
    for (const auto& a : groups)
        for (const auto& b : groups) {
            if (a.num_gens() * b.num_gens() > 9)
                continue;
            CHECK(Tensor(a, b).group().isomorphic(test::kronecker_tensor(a, b)));
        }
}

TEST_CASE("tensor is bilinear and functorial")
{
    std::mt19937 rng(1);
    FgAb a({2, 4}), b({6}), c({2, 12});
    Tensor t(a, b);
    for (int k = 0; k < 20; ++k) {
        Element x = test::random_element(rng, a), x2 = test::random_element(rng, a), y = test::random_element(rng, b),
                y2 = test::random_element(rng, b);
        CHECK(t.elem(x + x2, y) == t.elem(x, y) + t.elem(x2, y));
        CHECK(t.elem(x, y + y2) == t.elem(x, y) + t.elem(x, y2));
    }
    for (int k = 0; k < 10; ++k) {
        FgAbHom f = test::random_hom(rng, a, c), g = test::random_hom(rng, c, a), h = test::random_hom(rng, b, b);
        Tensor tc(c, b);
        CHECK(t.induced(t, compose(g, f), compose(h, h)) == compose(tc.induced(t, g, h), t.induced(tc, f, h)));
        CHECK(t.induced(t, FgAbHom::identity(a), FgAbHom::identity(b)) == FgAbHom::identity(t.group()));
        Element x = test::random_element(rng, a), y = test::random_element(rng, b);
        CHECK(t.induced(tc, f, h)(t.elem(x, y)) == tc.elem(f(x), h(y)));
    }
}

TEST_CASE("Tor")
{
    CHECK(Tor(FgAb({4}), FgAb({6})).group().isomorphic(FgAb({2})));
    CHECK(Tor(FgAb::free(1), FgAb({5})).group().is_trivial());
    CHECK(Tor(FgAb({6}), FgAb({6})).group().isomorphic(FgAb({6})));
    auto groups = test::small_groups();
    for (const auto& a : groups)
        for (const auto& b : groups) {
            if (a.num_gens() * b.num_gens() > 9)
                continue;
            IntVec orders;
            for (const auto& d : a.torsion())
                for (const auto& e : b.torsion())
                    orders.push_back(gcd(d, e));
            CHECK(Tor(a, b).group().isomorphic(FgAb::from_cyclic_orders(orders)));
        }
}

TEST_CASE("Tor is functorial and the swap is an involution")
{
    std::mt19937 rng(2);
    FgAb a({2, 4}), c({4, 8});
    Tor taa(a, a), tca(c, a), tcc(c, c);
    for (int k = 0; k < 8; ++k) {
        FgAbHom f = test::random_hom(rng, a, c), g = test::random_hom(rng, c, c), h = test::random_hom(rng, a, a);
        CHECK(taa.induced(tcc, compose(g, f), compose(g, f)) ==
              compose(tcc.induced(tcc, g, g), taa.induced(tcc, f, f)));
        CHECK(taa.induced(tca, f, h) == compose(tca.induced(tca, FgAbHom::identity(c), h),
                                                  taa.induced(tca, f, FgAbHom::identity(a))));
    }
    FgAbHom s = taa.swap();
    CHECK(compose(s, s) == FgAbHom::identity(taa.group()));
    // on Tor(Z/m, Z/m) the algebraic swap is -1
    Tor t4(FgAb({4}), FgAb({4}));
    CHECK(t4.swap() == -FgAbHom::identity(t4.group()));
}

TEST_CASE("Ext^1")
{
    CHECK(Ext1(FgAb({5})).group().isomorphic(FgAb({5})));
    CHECK(Ext1(FgAb::free(1)).group().is_trivial());
    CHECK(Ext1(FgAb({2, 6}, 2)).group().isomorphic(FgAb({2, 6})));
    std::mt19937 rng(3);
    FgAb a({2, 4}), b({4}), c({2, 8});
    Ext1 ea(a), eb(b), ec(c);
    for (int k = 0; k < 10; ++k) {
        FgAbHom f = test::random_hom(rng, a, b), g = test::random_hom(rng, b, c);
        CHECK(ea.induced(ec, compose(g, f)) == compose(ea.induced(eb, f), eb.induced(ec, g)));
        FgAbHom f2 = test::random_hom(rng, a, b);
        CHECK(ea.induced(eb, f + f2) == ea.induced(eb, f) + ea.induced(eb, f2));
    }
    CHECK(ea.induced(eb, FgAbHom::zero(a, b)).is_zero());
    CHECK(ea.induced(ea, FgAbHom::identity(a)) == FgAbHom::identity(ea.group()));
    // Ext(Z/n) -> Ext(Z/n) induced by multiplication by k is multiplication by k
    Ext1 e6(FgAb({6}));
    FgAbHom times5(FgAb({6}), FgAb({6}), IntMat{{5}});
    CHECK(e6.induced(e6, times5) == FgAbHom(e6.group(), e6.group(), IntMat{{5}}));
}

TEST_CASE("exterior powers")
{
    CHECK(ExteriorPower(FgAb({2, 2}), 2).group().isomorphic(FgAb({2})));
    CHECK(ExteriorPower(FgAb({7}), 3).group().is_trivial());
    CHECK(ExteriorPower(FgAb({2, 2, 2}), 3).group().isomorphic(FgAb({2})));
    CHECK(ExteriorPower(FgAb::free(3), 2).group().isomorphic(FgAb::free(3)));
    for (const auto& a : test::small_groups()) {
        IntVec o2, o3;
        size_t g = a.num_gens();
        for (size_t i = 0; i < g; ++i)
            for (size_t j = i + 1; j < g; ++j) {
                o2.push_back(gcd(a.gen_order(i), a.gen_order(j)));
                for (size_t k = j + 1; k < g; ++k)
                    o3.push_back(gcd(gcd(a.gen_order(i), a.gen_order(j)), a.gen_order(k)));
            }
        CHECK(ExteriorPower(a, 2).group().isomorphic(FgAb::from_cyclic_orders(o2)));
        CHECK(ExteriorPower(a, 3).group().isomorphic(FgAb::from_cyclic_orders(o3)));
    }
    std::mt19937 rng(4);
    FgAb a({2, 4, 4}), b({4, 8});
    ExteriorPower w2a(a, 2), w2b(b, 2), w3a(a, 3);
    for (int k = 0; k < 10; ++k) {
        Element x = test::random_element(rng, a), y = test::random_element(rng, a), z = test::random_element(rng, a);
        CHECK(w2a.wedge(x, x).is_zero());
        CHECK(w2a.wedge(x, y) == -w2a.wedge(y, x));
        CHECK(w3a.wedge(x, y, z) == -w3a.wedge(y, x, z));
        CHECK(w3a.wedge(x, y, x).is_zero());
        FgAbHom f = test::random_hom(rng, a, b);
        CHECK(w2a.induced(w2b, f)(w2a.wedge(x, y)) == w2b.wedge(f(x), f(y)));
    }
    CHECK(w3a.induced(w3a, FgAbHom::identity(a)) == FgAbHom::identity(w3a.group()));
}

TEST_CASE("mod 2 reduction")
{
    CHECK(ModTwo(FgAb({3, 12}, 1)).group().isomorphic(FgAb({2, 2})));
    std::mt19937 rng(5);
    FgAb a({2, 4}), b({6});
    ModTwo ma(a), mb(b);
    for (int k = 0; k < 10; ++k) {
        FgAbHom f = test::random_hom(rng, a, b), g = test::random_hom(rng, b, a);
        CHECK(ma.induced(ma, compose(g, f)) == compose(mb.induced(ma, g), ma.induced(mb, f)));
        CHECK(compose(ma.induced(mb, f), ma.projection()) == compose(mb.projection(), f));
    }
}

TEST_CASE("involution invariants")
{
    FgAb a({2, 4});
    CHECK(involution_invariants(FgAbHom::identity(a), 1).sub.isomorphic(a));
    FgAb z2({2});
    CHECK(involution_invariants(FgAbHom::identity(z2), -1).sub.isomorphic(z2));
    Tor t(FgAb({4}), FgAb({4}));
    auto inv = involution_invariants(FgAbHom::identity(t.group()), -1);
    CHECK(inv.sub.isomorphic(FgAb({2})));
    FgAbHom not_inv(FgAb({5}), FgAb({5}), IntMat{{2}});
    CHECK_THROWS(involution_invariants(not_inv, 1));
}

TEST_CASE("symmetric quotient sequence")
{
    SymQuotient s2(FgAb({2}));
    CHECK(s2.group().isomorphic(FgAb({2})));
    CHECK(s2.delta().is_injective());
    SymQuotient sz(FgAb::free(1));
    CHECK(sz.group().isomorphic(FgAb({2})));
    CHECK(sz.delta().is_iso());
    CHECK(SymQuotient(FgAb({3})).group().is_trivial());

    for (const auto& a : test::finite_abelian_groups(36)) {
        SymQuotient s(a);
        CAPTURE(a.str());
        CHECK(s.delta().is_injective());
        CHECK(s.group().order() == s.mod_two().group().order() * s.wedge().group().order());
        CHECK(s.to_wedge().is_surjective());
        CHECK(compose(s.to_wedge(), s.delta()).is_zero());
        CHECK(is_subgroup_of(kernel(s.to_wedge()), image(s.delta())));
        for (const auto& x : a.elements())
            CHECK(s.delta()(s.mod_two().reduce(x)) == s.quotient_map()(s.tensor().elem(x, x)));
    }
}

TEST_CASE("subgroups, kernels and quotients")
{
    FgAb a({2, 4}, 1);
    FgAbHom f(a, FgAb({4}), IntMat{{2, 1, 3}});
    auto k = kernel(f);
    for (size_t j = 0; j < k.sub.num_gens(); ++j)
        CHECK(f(k.inclusion(k.sub.gen(j))).is_zero());
    CHECK(k.inclusion.is_injective());
    auto [q, p] = cokernel(f);
    CHECK(q.is_trivial());
    CHECK(f.is_surjective());
    auto im = image(FgAbHom(FgAb({8}), FgAb({8}), IntMat{{2}}));
    CHECK(im.sub.isomorphic(FgAb({4})));
    CHECK(im.contains(FgAb({8}).element({6})));
    CHECK(!im.contains(FgAb({8}).element({3})));
    auto pre = im.preimage(FgAb({8}).element({6}));
    REQUIRE(pre);
    CHECK(im.inclusion(*pre) == FgAb({8}).element({6}));

    auto ds = direct_sum({FgAb({2}), FgAb({3}), FgAb::free(1)});
    CHECK(ds.group.isomorphic(FgAb({6}, 1)));
    for (size_t k2 = 0; k2 < 3; ++k2)
        CHECK(compose(ds.projections[k2], ds.injections[k2]) == FgAbHom::identity(ds.projections[k2].cod()));
}

#include <random>

#include "doctest.h"
#include "h3/abres.hpp"
#include "h3/barres.hpp"
#include "h3/catalog.hpp"
#include "bar_oracle.hpp"
#include "test_support.hpp"

using namespace h3;

using test::unnormalized_bar;

namespace {

FiniteGroup group_of(const FgAb& a) { return FiniteGroup::abelian(a.torsion()); }

GroupHomology bar(const FiniteGroup& g, size_t max_degree = 3)
{
    BarOptions o;
    o.max_degree = max_degree;
    o.max_order = 32;
    return GroupHomology(g, o);
}

BarChain random_chain(std::mt19937& rng, const FiniteGroup& g, size_t n, size_t terms)
{
    BarChain c;
    for (size_t k = 0; k < terms; ++k) {
        BarTuple t(n);
        for (auto& x : t) {
            do
                x = static_cast<Elt>(rng() % g.order());
            while (x == g.identity());
        }
        add_term(c, t, static_cast<long long>(rng() % 7) - 3);
    }
    return c;
}

} // namespace

TEST_CASE("bar complex boundaries")
{
    for (const FiniteGroup& g : {quaternion_group(), dihedral(3), FiniteGroup::abelian({2, 2}), FiniteGroup::cyclic(5)}) {
        BarComplex c(g, 4);
        CHECK(c.complex().d_squared_zero());
        for (size_t n = 0; n <= 4; ++n)
            CHECK(c.boundary_matrix(n) == c.boundary_matrix_serial(n));
        for (size_t k = 0; k < c.rank(3); k += 7)
            CHECK(c.index(c.tuple(3, k)) == k);
        std::mt19937 rng(5);
        BarChain x = random_chain(rng, g, 3, 6);
        CHECK(c.to_chain(c.to_vector(x, 3), 3) == x);
        CHECK(c.boundary(c.boundary(x)).empty());
    }
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    BarComplex c(z2, 3);
    CHECK(c.rank(3) == 1);
    // d[1|1] = [1] - [] + [1] with 1*1 = 0 dropped
    CHECK(c.boundary(BarTuple{1, 1}) == BarChain{{{1}, 2}});
    CHECK(to_string(BarChain{{{1, 1}, -2}}, z2) == "-2[(1)|(1)]");
}

TEST_CASE("bar homology examples")
{
    auto z2 = bar(FiniteGroup::cyclic(2));
    CHECK(z2.H(0).isomorphic(FgAb::free(1)));
    CHECK(z2.H(1).isomorphic(FgAb({2})));
    CHECK(z2.H(2).is_trivial());
    CHECK(z2.H(3).isomorphic(FgAb({2})));

    auto one = bar(FiniteGroup::cyclic(1));
    for (size_t n = 1; n <= 3; ++n)
        CHECK(one.H(n).is_trivial());

    FiniteGroup q8 = quaternion_group();
    auto hq = bar(q8);
    CHECK(hq.H(1).isomorphic(FgAb({2, 2})));
    CHECK(hq.H(2).is_trivial());
    CHECK(hq.H(3).isomorphic(FgAb({8})));
    ChainComplex u = unnormalized_bar(q8, 4);
    REQUIRE(u.d_squared_zero());
    for (size_t n = 1; n <= 3; ++n)
        CHECK(Homology(u, n).group().isomorphic(hq.H(n)));

    auto s3 = bar(dihedral(3));
    CHECK(s3.H(1).isomorphic(FgAb({2})));
    CHECK(s3.H(2).is_trivial());
    CHECK(s3.H(3).isomorphic(FgAb({6})));
    ChainComplex us3 = unnormalized_bar(dihedral(3), 4);
    CHECK(Homology(us3, 3).group().isomorphic(s3.H(3)));

    for (size_t n = 0; n <= 3; ++n)
        for (const auto& z : hq.generators(n)) {
            CHECK(hq.is_cycle(n, z));
            CHECK(hq.representative(n, hq.class_of(n, z)) == z);
        }
    CHECK_THROWS_AS(hq.class_of(2, BarChain{{{1, 1}, 1}}), NotACycle);
    CHECK_THROWS_AS(GroupHomology{central_square_32()}, intlin::ResourceLimitError);
}

TEST_CASE("bar homology agrees with the abelian engine up to order 16")
{
    for (const FgAb& a : test::finite_abelian_groups(16)) {
        auto h = bar(group_of(a));
        AbelianComplex c = AbelianComplex::of(a, 5);
        for (size_t n = 0; n <= 3; ++n)
            CHECK_MESSAGE(h.H(n).isomorphic(c.homology(n).group()), a.str() << " degree " << n);
    }
}

TEST_CASE("induced maps")
{
    FiniteGroup q8 = quaternion_group();
    auto hq = bar(q8);
    for (size_t n = 0; n <= 3; ++n)
        CHECK(induced(hq, hq, GroupHom::identity(q8), n) == FgAbHom::identity(hq.H(n)));

    std::vector<Elt> z = q8.center();
    GroupHom inc = GroupHom::inclusion(q8, z);
    auto ha = bar(inc.dom());
    CHECK(induced(ha, hq, inc, 1).is_zero());
    CHECK(induced(ha, hq, inc, 0).is_iso());

    Quotient quo = quotient(q8, z);
    auto hquo = bar(quo.group);
    CHECK(hquo.H(1).isomorphic(FgAb({2, 2})));
    CHECK(induced(hq, hquo, quo.projection, 1).is_iso());
    CHECK(induced(hq, hquo, quo.projection, 0).is_iso());
    CHECK(compose(induced(hq, hquo, quo.projection, 3), induced(ha, hq, inc, 3)).is_zero());

    // functoriality along C8 -> C4 -> C2
    FiniteGroup c8 = FiniteGroup::cyclic(8), c4 = FiniteGroup::cyclic(4), c2 = FiniteGroup::cyclic(2);
    GroupHom f(c8, c4, {0, 1, 2, 3, 0, 1, 2, 3}), g(c4, c2, {0, 1, 0, 1});
    auto h8 = bar(c8), h4 = bar(c4), h2 = bar(c2);
    for (size_t n = 0; n <= 3; ++n)
        CHECK(induced(h8, h2, compose(g, f), n) == compose(induced(h4, h2, g, n), induced(h8, h4, f, n)));
    // multiplication by 2 on C4: 2 on H_1, 4 = 0 on H_3
    GroupHom dbl(c4, c4, {0, 2, 0, 2});
    CHECK(induced(h4, h4, dbl, 1) == Integer(2) * FgAbHom::identity(h4.H(1)));
    CHECK(induced(h4, h4, dbl, 3).is_zero());
    GroupHom tri(c4, c4, {0, 3, 2, 1});
    CHECK(induced(h4, h4, tri, 3) == FgAbHom::identity(h4.H(3)));
}

TEST_CASE("cross products")
{
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    FiniteGroup v = FiniteGroup::direct_product(z2, z2);
    BarChain a{{{1}, 1}};
    BarChain ab = cross_product(z2, a, z2, a, v);
    // (1,0) = 2, (0,1) = 1
    CHECK(ab == BarChain{{{2, 1}, 1}, {{1, 2}, -1}});
    auto hv = bar(v);
    CHECK(hv.is_cycle(2, ab));
    CHECK(!hv.class_of(2, ab).is_zero());

    FiniteGroup e = FiniteGroup::direct_product(v, z2);
    BarChain abc = cross_product(v, ab, z2, a, e);
    FiniteGroup e2 = FiniteGroup::direct_product(z2, v);
    CHECK(e == e2);
    CHECK(abc == cross_product(z2, a, v, cross_product(z2, a, z2, a, v), e2));
    auto he = bar(e);
    CHECK(!he.class_of(3, abc).is_zero());

    // Leibniz rule on random chains
    std::mt19937 rng(11);
    FiniteGroup s3 = dihedral(3), c3 = FiniteGroup::cyclic(3);
    FiniteGroup p = FiniteGroup::direct_product(c3, s3);
    BarComplex bc3(c3, 3), bs3(s3, 3), bp(p, 4);
    for (size_t deg_x = 0; deg_x <= 2; ++deg_x)
        for (size_t deg_y = 0; deg_y + deg_x <= 3; ++deg_y) {
            BarChain x = deg_x ? random_chain(rng, c3, deg_x, 3) : BarChain{{{}, 1}};
            BarChain y = deg_y ? random_chain(rng, s3, deg_y, 3) : BarChain{{{}, 1}};
            BarChain lhs = bp.boundary(cross_product(c3, x, s3, y, p));
            BarChain rhs = cross_product(c3, bc3.boundary(x), s3, y, p) +
                           Integer(deg_x % 2 ? -1 : 1) * cross_product(c3, x, s3, bs3.boundary(y), p);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("Kunneth bookkeeping of cross products")
{
    std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                    FiniteGroup::abelian({2, 2}), dihedral(3), FiniteGroup::cyclic(1)};
    for (const auto& a : groups)
        for (const auto& g : groups) {
            if (a.order() * g.order() > 16)
                continue;
            FiniteGroup ag = FiniteGroup::direct_product(a, g);
            auto ha = bar(a), hg = bar(g), hag = bar(ag);
            for (size_t n = 1; n <= 3; ++n) {
                std::vector<Element> classes;
                Integer tensor_order = 1, tor_order = 1;
                for (size_t p = 0; p <= n; ++p) {
                    tensor_order *= Tensor(ha.H(p), hg.H(n - p)).group().order();
                    if (p < n)
                        tor_order *= Tor(ha.H(p), hg.H(n - 1 - p)).group().order();
                    for (const auto& x : ha.generators(p))
                        for (const auto& y : hg.generators(n - p)) {
                            BarChain c = cross_product(a, x, g, y, ag);
                            REQUIRE(hag.is_cycle(n, c));
                            classes.push_back(hag.class_of(n, c));
                        }
                }
                auto sub = subgroup_generated(hag.H(n), classes);
                CHECK_MESSAGE(sub.sub.order() == tensor_order, a.name() << " x " << g.name() << " n=" << n);
                CHECK(hag.H(n).order() == tensor_order * tor_order);
            }
        }
}

TEST_CASE("rho image")
{
    for (const FgAb& a : {FgAb({2}), FgAb({2, 2}), FgAb({4}), FgAb({2, 4}), FgAb({3, 3}), FgAb({6})}) {
        FiniteGroup g = group_of(a);
        std::vector<Elt> all(g.order());
        for (Elt x = 0; x < g.order(); ++x)
            all[x] = x;
        GroupHom id = GroupHom::inclusion(g, all);
        auto hg = bar(g), hsub = bar(id.dom());
        SubgroupEmbedding r = rho_image(hg, id, hsub);
        Pontryagin pont(a, 4);
        CHECK_MESSAGE(r.sub.isomorphic(pont.image(1, 2).sub), a.str());
    }

    FiniteGroup q8 = quaternion_group();
    auto hq = bar(q8);
    GroupHom zq = GroupHom::inclusion(q8, q8.center());
    CHECK(rho_image(hq, zq, bar(zq.dom())).sub.is_trivial());

    FiniteGroup d4 = dihedral(4);
    auto hd = bar(d4);
    CHECK(hd.H(2).isomorphic(FgAb({2})));
    CHECK(hd.H(3).isomorphic(FgAb({2, 2, 4})));
    GroupHom zd = GroupHom::inclusion(d4, d4.center());
    SubgroupEmbedding r = rho_image(hd, zd, bar(zd.dom()));
    // same subgroup through the cross product in A x G and the product map A x G -> G
    FiniteGroup zg = zd.dom();
    FiniteGroup ag = FiniteGroup::direct_product(zg, d4);
    std::vector<Elt> rho(ag.order());
    for (Elt u = 0; u < zg.order(); ++u)
        for (Elt x = 0; x < d4.order(); ++x)
            rho[u * d4.order() + x] = d4.mul(zd(u), x);
    GroupHom mult(ag, d4, rho);
    auto hz = bar(zg);
    std::vector<Element> via_product;
    for (const auto& x : hz.generators(1))
        for (const auto& y : hd.generators(2)) {
            BarChain direct = rho_cross(zd, x, y);
            BarChain routed = push_forward(mult, cross_product(zg, x, d4, y, ag));
            CHECK(hd.class_of(3, direct) == hd.class_of(3, routed));
            via_product.push_back(hd.class_of(3, routed));
        }
    SubgroupEmbedding r2 = subgroup_generated(hd.H(3), via_product);
    CHECK(is_subgroup_of(r, r2));
    CHECK(is_subgroup_of(r2, r));
    CHECK(r.sub.is_trivial());

    std::vector<Elt> refl = d4.generate({*d4.find("b")});
    GroupHom ref = GroupHom::inclusion(d4, refl);
    CHECK_THROWS_AS(rho_image(hd, ref, bar(ref.dom())), NotCentral);
}

#include <set>

#include "doctest.h"
#include "h3/catalog.hpp"
#include "h3/group.hpp"

using namespace h3;

namespace {

Elt el(const FiniteGroup& g, const std::string& l)
{
    auto x = g.find(l);
    REQUIRE(x.has_value());
    return *x;
}

} // namespace

TEST_CASE("quaternion multiplication")
{
    FiniteGroup q = quaternion_group();
    CHECK(q.order() == 8);
    CHECK(q.mul(el(q, "i"), el(q, "j")) == el(q, "k"));
    CHECK(q.mul(el(q, "j"), el(q, "i")) == el(q, "-k"));
    CHECK(q.mul(el(q, "j"), el(q, "k")) == el(q, "i"));
    CHECK(q.mul(el(q, "k"), el(q, "i")) == el(q, "j"));
    for (const char* l : {"i", "j", "k"})
        CHECK(q.mul(el(q, l), el(q, l)) == el(q, "-1"));
    CHECK(q.inverse(el(q, "i")) == el(q, "-i"));
    CHECK(q.commutator(el(q, "i"), el(q, "j")) == el(q, "-1"));
    std::vector<Elt> pm{el(q, "1"), el(q, "-1")};
    std::sort(pm.begin(), pm.end());
    CHECK(q.center() == pm);
    CHECK(q.derived_subgroup() == pm);
    CHECK(abelian_invariants(q).isomorphic(FgAb({2, 2})));
    CHECK(!q.is_abelian());
    CHECK(q.element_order(el(q, "i")) == 4);
}

TEST_CASE("json and permutation input")
{
    FiniteGroup q = quaternion_group();
    FiniteGroup r = FiniteGroup::from_json(q.to_json());
    CHECK(r == q);
    CHECK(r.labels() == q.labels());

    auto s3 = FiniteGroup::from_json(nlohmann::json::parse(R"({"degree": 3, "generators": [[[1,2,3]], [[1,2]]]})"));
    CHECK(s3.order() == 6);
    CHECK(!s3.is_abelian());
    CHECK(s3.label(s3.identity()) == "()");
    CHECK(s3.find("(1,2,3)").has_value());
    CHECK(s3.derived_subgroup().size() == 3);

    auto c2 = FiniteGroup::from_json(nlohmann::json::parse(R"({"order": 2, "table": [[0,1],[1,0]]})"));
    CHECK(c2.order() == 2);
    CHECK(c2.label(1) == "1");

    CHECK_THROWS_AS(FiniteGroup::from_json(nlohmann::json::parse(R"({"order": 3, "table": [[0,1],[1,0]]})")),
                    GroupError);
    CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), GroupError);
    CHECK_THROWS_AS(FiniteGroup({{1, 0}, {1, 0}}), GroupError);
    std::vector<std::vector<Elt>> loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 3, 4, 0, 1}, {3, 4, 1, 2, 0},
                                       {4, 2, 0, 1, 3}};
    CHECK_THROWS_AS(FiniteGroup{loop}, GroupError);
    CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 0}}, {"x", "x"}), GroupError);
    CHECK_THROWS_AS(FiniteGroup::from_json(nlohmann::json::parse(R"({"degree": 2, "generators": [[[1,3]]]})")),
                    GroupError);
}

TEST_CASE("subgroups, quotients and homomorphisms")
{
    FiniteGroup q = quaternion_group();
    std::vector<Elt> z = q.center();
    CHECK(q.is_normal(z));
    CHECK(q.is_central(z));
    Quotient quo = quotient(q, z);
    CHECK(quo.group.order() == 4);
    CHECK(quo.group.is_abelian());
    for (Elt x = 0; x < 4; ++x)
        CHECK(quo.group.mul(x, x) == quo.group.identity());
    CHECK(quo.projection.is_surjective());
    CHECK(quo.projection.kernel() == z);

    GroupHom inc = GroupHom::inclusion(q, z);
    CHECK(inc.dom().order() == 2);
    CHECK(compose(quo.projection, inc).kernel().size() == 2);

    std::vector<Elt> i4 = q.generate({el(q, "i")});
    CHECK(i4.size() == 4);
    CHECK(q.is_normal(i4));
    CHECK(!q.is_central(i4));

    FiniteGroup d4 = dihedral(4);
    std::vector<Elt> refl = d4.generate({el(d4, "b")});
    CHECK(d4.is_subgroup(refl));
    CHECK(!d4.is_normal(refl));
    CHECK_THROWS_AS(quotient(d4, refl), GroupError);
    CHECK(!d4.is_subgroup({el(d4, "b")}));

    FiniteGroup c4 = FiniteGroup::cyclic(4);
    CHECK_THROWS_AS(GroupHom(c4, c4, {0, 1, 1, 0}), GroupError);
    GroupHom dbl(c4, c4, {0, 2, 0, 2});
    CHECK(dbl.kernel() == std::vector<Elt>{0, 2});
    CHECK(!dbl.is_surjective());
    CHECK(compose(dbl, dbl).kernel().size() == 4);
}

TEST_CASE("abelian groups and direct products")
{
    FiniteGroup a = FiniteGroup::abelian({2, 4});
    CHECK(a.order() == 8);
    CHECK(a.is_abelian());
    CHECK(a.label(5) == "(1,1)");
    CHECK(abelian_invariants(a).isomorphic(FgAb({2, 4})));
    CHECK(abelian_invariants(FiniteGroup::abelian({6, 4})).isomorphic(FgAb({2, 12})));
    FiniteGroup p = FiniteGroup::direct_product(quaternion_group(), FiniteGroup::cyclic(3));
    CHECK(p.order() == 24);
    CHECK(p.center().size() == 6);
    CHECK(abelian_invariants(p).isomorphic(FgAb({2, 6})));
}

TEST_CASE("catalogue of small groups")
{
    // numbers of isomorphism classes of groups of order 1..16
    const std::vector<size_t> counts{1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14};
    auto groups = small_groups(16);
    std::vector<size_t> found(17);
    std::set<std::string> prints, names;
    for (const auto& [name, g] : groups) {
        ++found[g.order()];
        CHECK(prints.insert(fingerprint(g)).second);
        CHECK(names.insert(name).second);
        CHECK(g.name() == name);
    }
    for (size_t n = 1; n <= 16; ++n)
        CHECK_MESSAGE(found[n] == counts[n - 1], "order " << n);
    CHECK(small_groups(8).size() == 14);
}

TEST_CASE("larger fixtures")
{
    FiniteGroup h = heisenberg(3);
    CHECK(h.order() == 27);
    CHECK(h.center().size() == 3);
    CHECK(h.derived_subgroup() == h.center());
    for (Elt x = 0; x < h.order(); ++x)
        CHECK(h.mul(h.mul(x, x), x) == h.identity());

    FiniteGroup g = central_square_32();
    CHECK(g.order() == 32);
    CHECK(g.center() == g.derived_subgroup());
    CHECK(abelian_invariants(g.subgroup(g.center())).isomorphic(FgAb({2, 2})));
}

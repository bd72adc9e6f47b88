#include <set>

#include "doctest.h"
#include "h3/catalog.hpp"
#include "h3/extlab.hpp"

using namespace h3;

namespace {

// Every subgroup of Z(G) n G'.
std::vector<std::vector<Elt>> central_subgroups_in_derived(const FiniteGroup& g)
{
    std::vector<Elt> z = g.center(), d = g.derived_subgroup(), pool;
    std::set_intersection(z.begin(), z.end(), d.begin(), d.end(), std::back_inserter(pool));
    std::set<std::vector<Elt>> subs{{g.identity()}};
    for (Elt x : pool)
        for (Elt y : pool)
            subs.insert(g.generate({x, y}));
    return {subs.begin(), subs.end()};
}

Verdict verdict(const Report& r, const std::string& name)
{
    const Check* c = r.find(name);
    REQUIRE_MESSAGE(c, name);
    return c->verdict;
}

const std::vector<std::string> check_names{"low_degree_triviality.H1", "low_degree_triviality.H2",
                                           "wedge3_composite_trivial", "theorem_2torsion",
                                           "remark_i_check",           "stammbach_inclusion",
                                           "cohomology_triviality"};

} // namespace

TEST_CASE("validation of central subgroups")
{
    FiniteGroup q8 = quaternion_group();
    auto data = validate(q8, std::vector<std::string>{"-1"});
    CHECK(data.a.size() == 2);
    CHECK(data.q.order() == 4);
    CHECK(data.proj.is_surjective());

    FiniteGroup d4 = dihedral(4);
    CHECK(validate(d4, d4.center()).q.order() == 4);

    FiniteGroup z4 = FiniteGroup::cyclic(4);
    try {
        validate(z4, std::vector<Elt>{0, 2});
        FAIL("accepted a subgroup outside G'");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationError::Kind::not_in_derived);
    }
    try {
        validate(q8, std::vector<std::string>{"i"});
        FAIL("accepted a non-subgroup");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationError::Kind::not_subgroup);
    }
    try {
        validate(q8, std::vector<std::string>{"i", "-1", "-i"});
        FAIL("accepted a non-central subgroup");
    } catch (const ValidationError& e) {
        CHECK(e.kind() == ValidationError::Kind::not_central);
    }
    CHECK_THROWS_AS(validate(q8, std::vector<std::string>{"nope"}), ValidationError);
}

TEST_CASE("quaternion group with its centre")
{
    ExtensionContext cx(validate(quaternion_group(), std::vector<std::string>{"-1"}));
    CHECK(cx.hg().H(3).isomorphic(FgAb({8})));
    CHECK(cx.ha().H(3).isomorphic(FgAb({2})));
    CHECK(cx.rho().sub.is_trivial());
    // The periodicity class of Q8 restricts to that of its centre, so H_3(Z/2) -> H_3(Q8) is injective.
    CHECK(image(induced(cx.ha(), cx.hg(), cx.data().incl, 3)).sub.isomorphic(FgAb({2})));

    Report r = extension_report(cx);
    CHECK(r.passed());
    for (const auto& name : check_names)
        CHECK_MESSAGE(verdict(r, name) == Verdict::pass, name);
    CHECK(r.find("wedge3_composite_trivial")->detail.find("vacuous") != std::string::npos);
    CHECK(r.invariants()["exact1_probe"]["rho_in_kernel"] == true);
}

TEST_CASE("every central subgroup inside G' for groups of order at most 16")
{
    size_t pairs = 0, nontrivial = 0;
    for (const auto& [name, g] : small_groups(16))
        for (const auto& a : central_subgroups_in_derived(g)) {
            ExtensionContext cx(validate(g, a));
            Report r = extension_report(cx);
            for (const auto& c : r.checks())
                CHECK_MESSAGE(c.verdict != Verdict::fail, name << " |A|=" << a.size() << " " << c.name << ": "
                                                                << c.witness);
            CHECK(r.invariants()["exact1_probe"]["rho_in_kernel"] == true);
            ++pairs;
            nontrivial += a.size() > 1;
        }
    CHECK(nontrivial >= 9);
    CHECK(pairs > nontrivial);
}

TEST_CASE("report json shape and determinism")
{
    ExtensionContext cx(validate(dihedral(4), dihedral(4).center()));
    Report r = extension_report(cx);
    auto j = extension_json(cx, r);
    CHECK(j["input"]["order"] == 8);
    CHECK(j["input"]["central_subgroup"].size() == 2);
    CHECK(j["checks"].size() == check_names.size());
    CHECK(j["invariants"].contains("H_3(G)"));
    ExtensionContext again(validate(dihedral(4), dihedral(4).center()));
    CHECK(extension_json(again, extension_report(again)).dump() == j.dump());
}

TEST_CASE("checks report witnesses when A is outside G'")
{
    FiniteGroup g = FiniteGroup::abelian({Integer(2), Integer(2), Integer(2)});
    std::vector<Elt> all(g.order());
    for (Elt x = 0; x < g.order(); ++x)
        all[x] = x;
    Quotient q = quotient(g, all);
    CentralSubgroupData data{g, all, q.group, q.projection, GroupHom::inclusion(g, all)};
    ExtensionContext cx(data);

    Report w = wedge3_composite_trivial(cx);
    REQUIRE(w.checks().size() == 1);
    CHECK(w.checks()[0].verdict == Verdict::fail);
    CHECK(w.checks()[0].witness.find("cycle") != std::string::npos);

    Report low = low_degree_triviality(cx);
    CHECK(verdict(low, "low_degree_triviality.H1") == Verdict::fail);
    CHECK(verdict(low, "low_degree_triviality.H2") == Verdict::fail);
    CHECK(verdict(cohomology_triviality(cx), "cohomology_triviality") == Verdict::fail);
}

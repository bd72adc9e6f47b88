#include <random>
#include <sstream>

#include "doctest.h"
#include "h3/intlin.hpp"

using namespace h3;
using namespace h3::intlin;

namespace {

IntMat random_matrix(std::mt19937& rng, size_t r, size_t c, int range, double density)
{
    std::uniform_int_distribution<int> val(-range, range);
    std::uniform_real_distribution<double> u(0, 1);
    IntMat m(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            if (u(rng) < density)
                m(i, j) = val(rng);
    return m;
}

// Invariant factors from gcds of k x k minors (determinantal divisors).
IntVec invariant_factors_by_minors(const IntMat& m)
{
    size_t r = m.rows(), c = m.cols();
    IntVec dk{Integer(1)};
    for (size_t k = 1; k <= std::min(r, c); ++k) {
        Integer g(0);
        std::vector<size_t> rs(k), cs(k);
        std::vector<bool> rsel(r), csel(c);
        std::fill(rsel.begin(), rsel.begin() + k, true);
        do {
            size_t t = 0;
            for (size_t i = 0; i < r; ++i)
                if (rsel[i])
                    rs[t++] = i;
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + k, true);
            do {
                t = 0;
                for (size_t j = 0; j < c; ++j)
                    if (csel[j])
                        cs[t++] = j;
                IntMat sub(k, k);
                for (size_t a = 0; a < k; ++a)
                    for (size_t b = 0; b < k; ++b)
                        sub(a, b) = m(rs[a], cs[b]);
                g = gcd(g, determinant(sub));
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
        if (g.is_zero())
            break;
        dk.push_back(g);
    }
    IntVec out;
    for (size_t k = 1; k < dk.size(); ++k)
        out.push_back(dk[k] / dk[k - 1]);
    return out;
}

IntVec unit(size_t n, size_t i)
{
    IntVec v(n);
    v[i] = 1;
    return v;
}

void check_cokernel_consistency(const IntMat& m, const Cokernel& ck)
{
    size_t n = ck.num_generators();
    for (size_t j = 0; j < m.cols(); ++j) {
        IntVec col = m.col(j);
        CHECK(ck.in_image(col));
        for (const auto& v : ck.coordinates(col))
            CHECK(v.is_zero());
    }
    for (size_t k = 0; k < n; ++k) {
        IntVec g = ck.generator(k);
        IntVec coords = ck.coordinates(g);
        for (size_t l = 0; l < n; ++l)
            CHECK(coords[l] == Integer(l == k ? 1 : 0));
        CHECK(ck.apply_inverse(ck.apply_transform(g)) == g);
    }
    // every standard basis vector is the combination of generators given by its coordinates
    for (size_t i = 0; i < m.rows(); ++i) {
        IntVec e = unit(m.rows(), i);
        IntVec c = ck.coordinates(e);
        IntVec diff = e;
        for (size_t k = 0; k < n; ++k) {
            IntVec g = ck.generator(k);
            for (size_t t = 0; t < diff.size(); ++t)
                diff[t].sub_mul(c[k], g[t]);
        }
        CHECK(ck.in_image(diff));
    }
}

} // namespace

TEST_CASE("integer arithmetic crosses the 64-bit boundary")
{
    Integer big = Integer(std::numeric_limits<int64_t>::max());
    Integer x = big + Integer(1);
    CHECK(!x.is_small());
    CHECK(x - Integer(1) == big);
    CHECK((x - Integer(1)).is_small());
    CHECK(mod(Integer(-7), Integer(3)) == Integer(2));
    CHECK(floor_div(Integer(-7), Integer(2)) == Integer(-4));
    auto e = extended_gcd(Integer(240), Integer(46));
    CHECK(e.g == Integer(2));
    CHECK(e.x * Integer(240) + e.y * Integer(46) == Integer(2));
    CHECK(Integer::parse("-123456789012345678901234567890").str() == "-123456789012345678901234567890");
}

TEST_CASE("smith normal form of the small example")
{
    IntMat m{{2, 4}, {6, 8}};
    auto d = snf(m);
    CHECK(d.U * m * d.V == d.S);
    CHECK(d.diagonal() == IntVec{2, 4});
    CHECK(determinant(d.U).is_unit());
    CHECK(determinant(d.V).is_unit());
}

TEST_CASE("kernel and solve")
{
    IntMat k = kernel_basis(IntMat{{1, 1}});
    REQUIRE(k.cols() == 1);
    CHECK(abs(k(0, 0)) == Integer(1));
    CHECK(k(0, 0) == -k(1, 0));

    CHECK(!solve(IntMat{{2}}, IntVec{3}).has_value());
    auto x = solve(IntMat{{2, 4}, {6, 8}}, IntVec{2, 6});
    REQUIRE(x.has_value());
    CHECK(*x == IntVec{1, 0});
}

TEST_CASE("snf agrees with determinantal divisors on random matrices")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMat m = random_matrix(rng, r, c, 9, 0.7);
        auto d = snf(m);
        CHECK(d.U * m * d.V == d.S);
        IntVec diag;
        for (size_t i = 0; i < d.rank; ++i)
            diag.push_back(d.S(i, i));
        CHECK(diag == invariant_factors_by_minors(m));
    }
}

TEST_CASE("cokernel of Z/2 x Z/4 x Z presentation")
{
    IntMat m{{2, 0}, {0, 4}, {0, 0}};
    for (const Cokernel& ck : {cokernel_reference(m), cokernel(SparseMat::from_dense(m))}) {
        CHECK(ck.torsion() == IntVec{2, 4});
        CHECK(ck.free_rank() == 1);
        CHECK(ck.rank() == 2);
        check_cokernel_consistency(m, ck);
        CHECK(ck.coordinates(IntVec{3, 5, -2}) == IntVec{1, 1, -2});
    }
}

TEST_CASE("sparse and reference cokernels agree on random matrices")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 80; ++trial) {
        size_t r = 1 + rng() % 9, c = 1 + rng() % 12;
        IntMat m = random_matrix(rng, r, c, trial % 2 ? 2 : 12, 0.4);
        Cokernel ref = cokernel_reference(m);
        for (int threads : {1, 2}) {
            EliminationOptions opts;
            opts.threads = threads;
            opts.parallel_threshold = 1;
            Cokernel sp = cokernel(SparseMat::from_dense(m), opts);
            CHECK(sp.torsion() == ref.torsion());
            CHECK(sp.free_rank() == ref.free_rank());
            CHECK(sp.rank() == ref.rank());
            check_cokernel_consistency(m, sp);
        }
        check_cokernel_consistency(m, ref);
        if (m.rows() <= 5 && m.cols() <= 5)
            CHECK(ref.smith_diagonal() == invariant_factors_by_minors(m));
    }
}

TEST_CASE("dense fallback gives the same cokernel")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        IntMat m = random_matrix(rng, 8, 10, 5, 0.5);
        EliminationOptions opts;
        opts.fill_limit = 0;
        Cokernel a = cokernel(SparseMat::from_dense(m), opts);
        Cokernel b = cokernel_reference(m);
        CHECK(a.torsion() == b.torsion());
        CHECK(a.free_rank() == b.free_rank());
        check_cokernel_consistency(m, a);
    }
}

TEST_CASE("elimination is deterministic across thread counts")
{
    std::mt19937 rng(5);
    IntMat m = random_matrix(rng, 40, 200, 3, 0.1);
    auto sm = SparseMat::from_dense(m);
    EliminationOptions one, many;
    one.threads = 1;
    many.threads = 4;
    many.parallel_threshold = 1;
    Cokernel a = cokernel(sm, one), b = cokernel(sm, many);
    IntVec x(40);
    for (size_t i = 0; i < 40; ++i)
        x[i] = static_cast<long long>(i * i % 7) - 3;
    CHECK(a.coordinates(x) == b.coordinates(x));
    CHECK(a.num_ops() == b.num_ops());
}

TEST_CASE("coordinate file round trip")
{
    IntMat m{{0, 3, 0}, {-1, 0, 5}};
    auto sm = SparseMat::from_dense(m);
    std::stringstream ss;
    write_coordinate(ss, sm);
    CHECK(read_coordinate(ss) == sm);
    std::stringstream bad("2 2 3\n0 0 1\n");
    CHECK_THROWS(read_coordinate(bad));
}

TEST_CASE("resource limits")
{
    ResourceLimits l;
    l.max_dimension = 3;
    ScopedLimits guard(l);
    CHECK_THROWS_AS(snf(IntMat(4, 2)), ResourceLimitError);
    CHECK_NOTHROW(snf(IntMat(3, 3)));
}

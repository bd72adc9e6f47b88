#pragma once

#include <functional>
#include <random>
#include <vector>

#include "h3/fgab.hpp"

namespace test {

using namespace h3;

// All finite abelian groups of order <= max_order, by invariant factors.
inline std::vector<FgAb> finite_abelian_groups(long max_order, bool include_trivial = true)
{
    std::vector<FgAb> out;
    if (include_trivial)
        out.push_back(FgAb::trivial());
    std::function<void(IntVec, long, long)> rec = [&](IntVec chain, long prod, long last) {
        for (long d = last; prod * d <= max_order; d += last) {
            IntVec c = chain;
            c.push_back(d);
            out.emplace_back(c);
            rec(c, prod * d, d);
        }
    };
    for (long d = 2; d <= max_order; ++d) {
        out.emplace_back(IntVec{d});
        rec({d}, d, d);
    }
    return out;
}

inline std::vector<FgAb> small_groups()
{
    return {FgAb::trivial(), FgAb({2}),    FgAb({6}),    FgAb::free(1),   FgAb({2, 4}),
            FgAb({3}, 1),    FgAb({2, 2, 2}), FgAb({4, 12}), FgAb({}, 2), FgAb({2, 6}, 1)};
}

// A (x) B presented by the Kronecker relation matrix R_A (x) I + I (x) R_B.
inline FgAb kronecker_tensor(const FgAb& a, const FgAb& b)
{
    size_t na = a.num_gens(), nb = b.num_gens();
    std::vector<IntVec> rows;
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < nb; ++j) {
            IntVec r1(na * nb), r2(na * nb);
            r1[i * nb + j] = a.gen_order(i);
            r2[i * nb + j] = b.gen_order(j);
            rows.push_back(r1);
            rows.push_back(r2);
        }
    IntMat m(rows.size(), na * nb);
    for (size_t k = 0; k < rows.size(); ++k)
        for (size_t c = 0; c < na * nb; ++c)
            m(k, c) = rows[k][c];
    return from_relations(m).first;
}

inline Element random_element(std::mt19937& rng, const FgAb& a)
{
    IntVec c(a.num_gens());
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = static_cast<long long>(rng() % 23) - 11;
    return a.element(c);
}

// A random well-defined homomorphism a -> b.
inline FgAbHom random_hom(std::mt19937& rng, const FgAb& a, const FgAb& b)
{
    IntMat m(b.num_gens(), a.num_gens());
    for (size_t i = 0; i < a.num_gens(); ++i) {
        Integer d = a.gen_order(i);
        for (size_t j = 0; j < b.num_gens(); ++j) {
            Integer v = static_cast<long long>(rng() % 17) - 8;
            Integer e = b.gen_order(j);
            if (d.is_zero())
                m(j, i) = v;
            else if (e.is_zero())
                m(j, i) = 0;
            else
                m(j, i) = v * (e / gcd(e, d));
        }
    }
    return FgAbHom(a, b, m);
}

} // namespace test

#include "h3/catalog.hpp"

#include <map>
#include <sstream>

namespace h3 {

namespace {

std::string power_label(const std::string& sym, size_t e)
{
    if (e == 0)
        return "";
    return e == 1 ? sym : sym + "^" + std::to_string(e);
}

size_t mod(long x, size_t m)
{
    long r = x % static_cast<long>(m);
    return static_cast<size_t>(r < 0 ? r + static_cast<long>(m) : r);
}

} // namespace

FiniteGroup metacyclic(size_t m, size_t n, long r, size_t s, std::string name)
{
    std::vector<size_t> rpow(n);
    rpow[0] = 1 % m;
    for (size_t j = 1; j < n; ++j)
        rpow[j] = mod(static_cast<long>(rpow[j - 1]) * r, m);
    const size_t order = m * n;
    std::vector<std::vector<Elt>> table(order, std::vector<Elt>(order));
    std::vector<std::string> labels(order);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < m; ++i) {
            std::string l = power_label("a", i) + power_label("b", j);
            labels[j * m + i] = l.empty() ? "1" : l;
            for (size_t l2 = 0; l2 < n; ++l2)
                for (size_t k = 0; k < m; ++k) {
                    size_t e = i + rpow[j] * k + (j + l2 >= n ? s : 0);
                    table[j * m + i][l2 * m + k] = static_cast<Elt>(((j + l2) % n) * m + e % m);
                }
        }
    return FiniteGroup(std::move(table), std::move(labels), std::move(name));
}

FiniteGroup semidirect_cyclic(const FiniteGroup& g, const std::vector<Elt>& phi, size_t n, std::string name)
{
    const size_t k = g.order();
    if (phi.size() != k)
        throw GroupError("semidirect product: automorphism has the wrong size");
    GroupHom aut(g, g, phi);
    if (!aut.is_surjective())
        throw GroupError("semidirect product: map is not an automorphism");
    // powers[j][x] = phi^j(x)
    std::vector<std::vector<Elt>> powers(n, std::vector<Elt>(k));
    for (Elt x = 0; x < k; ++x)
        powers[0][x] = x;
    for (size_t j = 1; j < n; ++j)
        for (Elt x = 0; x < k; ++x)
            powers[j][x] = phi[powers[j - 1][x]];
    for (Elt x = 0; x < k; ++x)
        if (phi[powers[n - 1][x]] != x)
            throw GroupError("semidirect product: automorphism order does not divide " + std::to_string(n));
    std::vector<std::vector<Elt>> table(k * n, std::vector<Elt>(k * n));
    std::vector<std::string> labels(k * n);
    for (size_t j = 0; j < n; ++j)
        for (Elt x = 0; x < k; ++x) {
            const size_t a = j * k + x;
            std::string t = power_label("t", j);
            labels[a] = x == g.identity() && !t.empty() ? t : g.label(x) + t;
            for (size_t l = 0; l < n; ++l)
                for (Elt y = 0; y < k; ++y)
                    table[a][l * k + y] = static_cast<Elt>(((j + l) % n) * k + g.mul(x, powers[j][y]));
        }
    return FiniteGroup(std::move(table), std::move(labels), std::move(name));
}

FiniteGroup quaternion_group()
{
    FiniteGroup m = metacyclic(4, 2, -1, 2);
    return FiniteGroup(m.table(), {"1", "i", "-1", "-i", "j", "k", "-j", "-k"}, "Q8");
}

FiniteGroup dihedral(size_t n) { return metacyclic(n, 2, -1, 0, "D" + std::to_string(n)); }

FiniteGroup heisenberg(size_t p)
{
    const size_t order = p * p * p;
    std::vector<std::vector<Elt>> table(order, std::vector<Elt>(order));
    std::vector<std::string> labels(order);
    for (size_t a = 0; a < order; ++a) {
        size_t x = a / (p * p), y = a / p % p, z = a % p;
        labels[a] = "[" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + "]";
        for (size_t b = 0; b < order; ++b) {
            size_t x2 = b / (p * p), y2 = b / p % p, z2 = b % p;
            table[a][b] = static_cast<Elt>((x + x2) % p * p * p + (y + y2) % p * p + (z + z2 + x * y2) % p);
        }
    }
    return FiniteGroup(std::move(table), std::move(labels), "Heis(" + std::to_string(p) + ")");
}

FiniteGroup central_square_32()
{
    // N = <y, z, c1, c2> with index y*8 + z*4 + c1*2 + c2; x maps y -> y c1, z -> z c2.
    FiniteGroup n = FiniteGroup::abelian({2, 2, 2, 2});
    std::vector<Elt> phi(16);
    for (Elt v = 0; v < 16; ++v) {
        Elt y = v >> 3 & 1, z = v >> 2 & 1, c1 = v >> 1 & 1, c2 = v & 1;
        phi[v] = y << 3 | z << 2 | (c1 ^ y) << 1 | (c2 ^ z);
    }
    return semidirect_cyclic(n, phi, 2, "C2^4:C2");
}

std::vector<NamedGroup> small_groups(size_t max_order)
{
    if (max_order > 16)
        throw GroupError("the built-in catalogue stops at order 16");
    auto ab = [](IntVec orders, std::string name) { return FiniteGroup::abelian(orders, std::move(name)); };
    FiniteGroup d4 = dihedral(4), q8 = quaternion_group(), z2 = FiniteGroup::cyclic(2);
    std::vector<NamedGroup> all{
        {"C1", ab({}, "C1")},
        {"C2", ab({2}, "C2")},
        {"C3", ab({3}, "C3")},
        {"C4", ab({4}, "C4")},
        {"C2^2", ab({2, 2}, "C2^2")},
        {"C5", ab({5}, "C5")},
        {"C6", ab({6}, "C6")},
        {"S3", metacyclic(3, 2, -1, 0, "S3")},
        {"C7", ab({7}, "C7")},
        {"C8", ab({8}, "C8")},
        {"C2xC4", ab({2, 4}, "C2xC4")},
        {"C2^3", ab({2, 2, 2}, "C2^3")},
        {"D4", d4},
        {"Q8", q8},
        {"C9", ab({9}, "C9")},
        {"C3^2", ab({3, 3}, "C3^2")},
        {"C10", ab({10}, "C10")},
        {"D5", dihedral(5)},
        {"C11", ab({11}, "C11")},
        {"C12", ab({12}, "C12")},
        {"C2xC6", ab({2, 6}, "C2xC6")},
        {"D6", dihedral(6)},
        {"A4", FiniteGroup::from_permutations(4, {{{1, 2, 3}}, {{1, 2}, {3, 4}}}, "A4")},
        {"Dic3", metacyclic(6, 2, -1, 3, "Dic3")},
        {"C13", ab({13}, "C13")},
        {"C14", ab({14}, "C14")},
        {"D7", dihedral(7)},
        {"C15", ab({15}, "C15")},
        {"C16", ab({16}, "C16")},
        {"C4^2", ab({4, 4}, "C4^2")},
        {"C2xC8", ab({2, 8}, "C2xC8")},
        {"C2^2xC4", ab({2, 2, 4}, "C2^2xC4")},
        {"C2^4", ab({2, 2, 2, 2}, "C2^4")},
    };
    {
        // (Z/4 x Z/2) x| Z/2 with t (x, y) t^-1 = (x, y + x mod 2)
        FiniteGroup n = ab({4, 2}, {});
        std::vector<Elt> phi(8);
        for (Elt v = 0; v < 8; ++v)
            phi[v] = (v / 2) * 2 + (v % 2 + v / 2) % 2;
        all.push_back({"(C4xC2):C2", semidirect_cyclic(n, phi, 2, "(C4xC2):C2")});
    }
    all.push_back({"C4:C4", metacyclic(4, 4, -1, 0, "C4:C4")});
    all.push_back({"M16", metacyclic(8, 2, 5, 0, "M16")});
    all.push_back({"D8", dihedral(8)});
    all.push_back({"SD16", metacyclic(8, 2, 3, 0, "SD16")});
    all.push_back({"Q16", metacyclic(8, 2, -1, 4, "Q16")});
    {
        FiniteGroup g = FiniteGroup::direct_product(z2, d4);
        g = FiniteGroup(g.table(), g.labels(), "C2xD4");
        all.push_back({"C2xD4", g});
    }
    {
        FiniteGroup g = FiniteGroup::direct_product(z2, q8);
        all.push_back({"C2xQ8", FiniteGroup(g.table(), g.labels(), "C2xQ8")});
    }
    {
        // (Z/4 x D4) / <(2, a^2)>
        FiniteGroup p = FiniteGroup::direct_product(FiniteGroup::cyclic(4), d4);
        Elt z = static_cast<Elt>(2 * d4.order() + *d4.find("a^2"));
        Quotient q = quotient(p, {p.identity(), z});
        all.push_back({"C4oD4", FiniteGroup(q.group.table(), q.group.labels(), "C4oD4")});
    }
    std::vector<NamedGroup> out;
    for (auto& e : all)
        if (e.group.order() <= max_order)
            out.push_back(std::move(e));
    std::stable_sort(out.begin(), out.end(),
                     [](const NamedGroup& a, const NamedGroup& b) { return a.group.order() < b.group.order(); });
    return out;
}

std::string fingerprint(const FiniteGroup& g)
{
    std::map<size_t, size_t> orders;
    for (Elt x = 0; x < g.order(); ++x)
        ++orders[g.element_order(x)];
    size_t commuting = 0;
    for (Elt a = 0; a < g.order(); ++a)
        for (Elt b = 0; b < g.order(); ++b)
            commuting += g.mul(a, b) == g.mul(b, a);
    std::vector<bool> square(g.order());
    for (Elt a = 0; a < g.order(); ++a)
        square[g.mul(a, a)] = true;
    std::ostringstream os;
    os << "n=" << g.order() << " orders=";
    for (auto [k, c] : orders)
        os << k << ":" << c << ",";
    auto z = g.center();
    os << " Z=" << abelian_invariants(g.subgroup(z)).str() << " G'=" << g.derived_subgroup().size()
       << " Gab=" << abelian_invariants(g).str() << " commuting=" << commuting
       << " squares=" << std::count(square.begin(), square.end(), true);
    return os.str();
}

} // namespace h3

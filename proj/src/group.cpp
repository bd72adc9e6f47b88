#include "h3/group.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <queue>

namespace h3 {

FiniteGroup::FiniteGroup(std::vector<std::vector<Elt>> table, std::vector<std::string> labels, std::string name)
{
    const size_t n = table.size();
    if (n == 0)
        throw GroupError("group table is empty");
    for (const auto& row : table) {
        if (row.size() != n)
            throw GroupError("group table is not square");
        for (Elt v : row)
            if (v >= n)
                throw GroupError("group table entry " + std::to_string(v) + " out of range");
    }
    auto data = std::make_shared<Data>();
    bool found = false;
    for (Elt e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (Elt x = 0; x < n && ok; ++x)
            ok = table[e][x] == x && table[x][e] == x;
        if (ok) {
            data->identity = e;
            found = true;
        }
    }
    if (!found)
        throw GroupError("group table has no identity");
    data->inverse.assign(n, 0);
    for (Elt x = 0; x < n; ++x) {
        auto it = std::find(table[x].begin(), table[x].end(), data->identity);
        if (it == table[x].end())
            throw GroupError("element " + std::to_string(x) + " has no inverse");
        Elt y = static_cast<Elt>(it - table[x].begin());
        if (table[y][x] != data->identity)
            throw GroupError("element " + std::to_string(x) + " has no two-sided inverse");
        data->inverse[x] = y;
    }
    for (Elt a = 0; a < n; ++a)
        for (Elt b = 0; b < n; ++b)
            for (Elt c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw GroupError("group table is not associative at (" + std::to_string(a) + ", " +
                                     std::to_string(b) + ", " + std::to_string(c) + ")");
    if (labels.empty())
        for (size_t x = 0; x < n; ++x)
            labels.push_back(std::to_string(x));
    if (labels.size() != n)
        throw GroupError("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw GroupError("group labels are not distinct");
    data->table = std::move(table);
    data->labels = std::move(labels);
    data->name = std::move(name);
    d_ = std::move(data);
}

FiniteGroup FiniteGroup::from_json(const nlohmann::json& j)
{
    std::string name = j.value("name", std::string());
    if (j.contains("table")) {
        auto table = j.at("table").get<std::vector<std::vector<Elt>>>();
        if (j.contains("order") && j.at("order").get<size_t>() != table.size())
            throw GroupError("order does not match the table size");
        std::vector<std::string> labels;
        if (j.contains("labels"))
            labels = j.at("labels").get<std::vector<std::string>>();
        return FiniteGroup(std::move(table), std::move(labels), std::move(name));
    }
    if (j.contains("degree") && j.contains("generators"))
        return from_permutations(j.at("degree").get<size_t>(),
                                 j.at("generators").get<std::vector<std::vector<std::vector<int>>>>(), name);
    throw GroupError("group JSON needs either a table or degree and generators");
}

FiniteGroup FiniteGroup::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw GroupError("cannot open group file " + path);
    nlohmann::json j;
    try {
        in >> j;
    }
    catch (const nlohmann::json::exception& e) {
        throw GroupError("malformed group file " + path + ": " + e.what());
    }
    return from_json(j);
}

namespace {

using Perm = std::vector<int>;

std::string cycle_string(const Perm& p)
{
    std::string out;
    std::vector<bool> seen(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i))
            continue;
        out += "(";
        size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            out += (first ? "" : ",") + std::to_string(j + 1);
            first = false;
            j = static_cast<size_t>(p[j]);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

} // namespace

FiniteGroup FiniteGroup::from_permutations(size_t degree, const std::vector<std::vector<std::vector<int>>>& generators,
                                           std::string name)
{
    std::vector<Perm> gens;
    for (const auto& cycles : generators) {
        Perm p(degree);
        for (size_t i = 0; i < degree; ++i)
            p[i] = static_cast<int>(i);
        std::vector<bool> used(degree);
        for (const auto& c : cycles)
            for (size_t k = 0; k < c.size(); ++k) {
                int from = c[k] - 1, to = c[(k + 1) % c.size()] - 1;
                if (from < 0 || static_cast<size_t>(from) >= degree || used[static_cast<size_t>(from)])
                    throw GroupError("bad cycle entry " + std::to_string(c[k]));
                used[static_cast<size_t>(from)] = true;
                p[static_cast<size_t>(from)] = to;
            }
        gens.push_back(std::move(p));
    }
    Perm id(degree);
    for (size_t i = 0; i < degree; ++i)
        id[i] = static_cast<int>(i);
    // i^(ab) = (i^a)^b
    auto compose_perm = [&](const Perm& a, const Perm& b) {
        Perm c(degree);
        for (size_t i = 0; i < degree; ++i)
            c[i] = b[static_cast<size_t>(a[i])];
        return c;
    };
    std::vector<Perm> elems{id};
    std::map<Perm, Elt> index{{id, 0}};
    for (size_t k = 0; k < elems.size(); ++k)
        for (const auto& g : gens) {
            Perm p = compose_perm(elems[k], g);
            if (!index.count(p)) {
                if (elems.size() >= 1u << 16)
                    throw GroupError("permutation group too large");
                index[p] = static_cast<Elt>(elems.size());
                elems.push_back(p);
            }
        }
    const size_t n = elems.size();
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    std::vector<std::string> labels;
    for (size_t a = 0; a < n; ++a) {
        labels.push_back(cycle_string(elems[a]));
        for (size_t b = 0; b < n; ++b)
            table[a][b] = index.at(compose_perm(elems[a], elems[b]));
    }
    return FiniteGroup(std::move(table), std::move(labels), std::move(name));
}

FiniteGroup FiniteGroup::abelian(const IntVec& orders, std::string name)
{
    std::vector<size_t> ord;
    size_t n = 1;
    for (const auto& o : orders) {
        if (o.sign() <= 0 || o > Integer(1 << 16))
            throw GroupError("abelian factor order " + o.str() + " is not supported");
        ord.push_back(static_cast<size_t>(o.small()));
        n *= ord.back();
    }
    auto digits = [&](size_t x) {
        std::vector<size_t> d(ord.size());
        for (size_t i = ord.size(); i-- > 0;) {
            d[i] = x % ord[i];
            x /= ord[i];
        }
        return d;
    };
    std::vector<std::vector<Elt>> table(n, std::vector<Elt>(n));
    std::vector<std::string> labels;
    for (size_t a = 0; a < n; ++a) {
        auto da = digits(a);
        std::string l = "(";
        for (size_t i = 0; i < da.size(); ++i)
            l += (i ? "," : "") + std::to_string(da[i]);
        labels.push_back(l + ")");
        for (size_t b = 0; b < n; ++b) {
            auto db = digits(b);
            size_t c = 0;
            for (size_t i = 0; i < ord.size(); ++i)
                c = c * ord[i] + (da[i] + db[i]) % ord[i];
            table[a][b] = static_cast<Elt>(c);
        }
    }
    return FiniteGroup(std::move(table), std::move(labels), std::move(name));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h)
{
    const size_t m = g.order(), n = h.order();
    std::vector<std::vector<Elt>> table(m * n, std::vector<Elt>(m * n));
    std::vector<std::string> labels;
    for (size_t a = 0; a < m * n; ++a) {
        labels.push_back("(" + g.label(static_cast<Elt>(a / n)) + "," + h.label(static_cast<Elt>(a % n)) + ")");
        for (size_t b = 0; b < m * n; ++b)
            table[a][b] = static_cast<Elt>(g.mul(static_cast<Elt>(a / n), static_cast<Elt>(b / n)) * n +
                                           h.mul(static_cast<Elt>(a % n), static_cast<Elt>(b % n)));
    }
    std::string name = g.name().empty() || h.name().empty() ? std::string() : g.name() + " x " + h.name();
    return FiniteGroup(std::move(table), std::move(labels), std::move(name));
}

std::optional<Elt> FiniteGroup::find(const std::string& label) const
{
    for (size_t x = 0; x < order(); ++x)
        if (d_->labels[x] == label)
            return static_cast<Elt>(x);
    return std::nullopt;
}

nlohmann::json FiniteGroup::to_json() const
{
    nlohmann::json j;
    if (!name().empty())
        j["name"] = name();
    j["order"] = order();
    j["table"] = d_->table;
    j["labels"] = d_->labels;
    return j;
}

bool FiniteGroup::is_abelian() const
{
    for (Elt a = 0; a < order(); ++a)
        for (Elt b = 0; b < a; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

size_t FiniteGroup::element_order(Elt a) const
{
    size_t k = 1;
    for (Elt x = a; x != identity(); x = mul(x, a))
        ++k;
    return k;
}

std::vector<Elt> FiniteGroup::center() const
{
    std::vector<Elt> z;
    for (Elt a = 0; a < order(); ++a) {
        bool central = true;
        for (Elt b = 0; b < order() && central; ++b)
            central = mul(a, b) == mul(b, a);
        if (central)
            z.push_back(a);
    }
    return z;
}

std::vector<Elt> FiniteGroup::generate(const std::vector<Elt>& gens) const
{
    std::vector<bool> in(order());
    std::vector<Elt> out{identity()};
    in[identity()] = true;
    for (size_t k = 0; k < out.size(); ++k)
        for (Elt g : gens) {
            Elt p = mul(out[k], g);
            if (!in[p]) {
                in[p] = true;
                out.push_back(p);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Elt> FiniteGroup::derived_subgroup() const
{
    std::vector<Elt> comms;
    std::vector<bool> seen(order());
    for (Elt a = 0; a < order(); ++a)
        for (Elt b = 0; b < order(); ++b) {
            Elt c = commutator(a, b);
            if (!seen[c]) {
                seen[c] = true;
                comms.push_back(c);
            }
        }
    return generate(comms);
}

bool FiniteGroup::is_subgroup(const std::vector<Elt>& s) const
{
    if (s.empty())
        return false;
    std::vector<bool> in(order());
    for (Elt x : s) {
        if (x >= order() || in[x])
            return false;
        in[x] = true;
    }
    if (!in[identity()])
        return false;
    for (Elt a : s)
        for (Elt b : s)
            if (!in[mul(a, inverse(b))])
                return false;
    return true;
}

bool FiniteGroup::is_normal(const std::vector<Elt>& s) const
{
    if (!is_subgroup(s))
        return false;
    std::vector<bool> in(order());
    for (Elt x : s)
        in[x] = true;
    for (Elt g = 0; g < order(); ++g)
        for (Elt x : s)
            if (!in[mul(mul(g, x), inverse(g))])
                return false;
    return true;
}

bool FiniteGroup::is_central(const std::vector<Elt>& s) const
{
    for (Elt x : s)
        for (Elt g = 0; g < order(); ++g)
            if (mul(x, g) != mul(g, x))
                return false;
    return true;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<Elt>& s) const
{
    if (!is_subgroup(s))
        throw GroupError("elements do not form a subgroup");
    std::map<Elt, Elt> pos;
    for (size_t i = 0; i < s.size(); ++i)
        pos[s[i]] = static_cast<Elt>(i);
    std::vector<std::vector<Elt>> table(s.size(), std::vector<Elt>(s.size()));
    std::vector<std::string> labels;
    for (size_t i = 0; i < s.size(); ++i) {
        labels.push_back(label(s[i]));
        for (size_t j = 0; j < s.size(); ++j)
            table[i][j] = pos.at(mul(s[i], s[j]));
    }
    return FiniteGroup(std::move(table), std::move(labels));
}

// ---------------------------------------------------------------------------

GroupHom::GroupHom(FiniteGroup dom, FiniteGroup cod, std::vector<Elt> values)
    : dom_(std::move(dom)), cod_(std::move(cod)), values_(std::move(values))
{
    if (values_.size() != dom_.order())
        throw GroupError("homomorphism needs one value per element");
    for (Elt v : values_)
        if (v >= cod_.order())
            throw GroupError("homomorphism value out of range");
    for (Elt a = 0; a < dom_.order(); ++a)
        for (Elt b = 0; b < dom_.order(); ++b)
            if (values_[dom_.mul(a, b)] != cod_.mul(values_[a], values_[b]))
                throw GroupError("not a homomorphism: f(" + dom_.label(a) + " * " + dom_.label(b) + ") differs");
}

GroupHom GroupHom::identity(const FiniteGroup& g)
{
    std::vector<Elt> v(g.order());
    for (Elt x = 0; x < g.order(); ++x)
        v[x] = x;
    return GroupHom(g, g, std::move(v));
}

GroupHom GroupHom::inclusion(const FiniteGroup& g, const std::vector<Elt>& s)
{
    return GroupHom(g.subgroup(s), g, s);
}

std::vector<Elt> GroupHom::kernel() const
{
    std::vector<Elt> k;
    for (Elt x = 0; x < dom_.order(); ++x)
        if (values_[x] == cod_.identity())
            k.push_back(x);
    return k;
}

bool GroupHom::is_surjective() const
{
    std::vector<bool> hit(cod_.order());
    for (Elt v : values_)
        hit[v] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

GroupHom compose(const GroupHom& g, const GroupHom& f)
{
    if (!(f.cod() == g.dom()))
        throw GroupError("compose: codomain and domain differ");
    std::vector<Elt> v(f.dom().order());
    for (Elt x = 0; x < v.size(); ++x)
        v[x] = g(f(x));
    return GroupHom(f.dom(), g.cod(), std::move(v));
}

Quotient quotient(const FiniteGroup& g, const std::vector<Elt>& normal)
{
    if (!g.is_normal(normal))
        throw GroupError("quotient by a subgroup that is not normal");
    const size_t n = g.order();
    std::vector<Elt> rep(n);
    for (Elt x = 0; x < n; ++x) {
        Elt m = x;
        for (Elt k : normal)
            m = std::min(m, g.mul(x, k));
        rep[x] = m;
    }
    std::vector<Elt> reps = rep;
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    std::map<Elt, Elt> pos;
    for (size_t i = 0; i < reps.size(); ++i)
        pos[reps[i]] = static_cast<Elt>(i);
    std::vector<std::vector<Elt>> table(reps.size(), std::vector<Elt>(reps.size()));
    std::vector<std::string> labels;
    for (size_t i = 0; i < reps.size(); ++i) {
        labels.push_back(g.label(reps[i]));
        for (size_t j = 0; j < reps.size(); ++j)
            table[i][j] = pos.at(rep[g.mul(reps[i], reps[j])]);
    }
    FiniteGroup q(std::move(table), std::move(labels), g.name().empty() ? std::string() : g.name() + "/N");
    std::vector<Elt> proj(n);
    for (Elt x = 0; x < n; ++x)
        proj[x] = pos.at(rep[x]);
    return {q, GroupHom(g, q, std::move(proj))};
}

FgAb abelian_invariants(const FiniteGroup& g)
{
    // symbols e_x with e_{xy} = e_x + e_y present the abelianization
    const size_t n = g.order();
    intlin::SparseMat rel(n, 0);
    for (Elt a = 0; a < n; ++a)
        for (Elt b = 0; b < n; ++b) {
            intlin::SparseColumn c{{a, Integer(1)}};
            c.push_back({b, Integer(1)});
            c.push_back({g.mul(a, b), Integer(-1)});
            rel.append_column(std::move(c));
        }
    return present(rel).group;
}

} // namespace h3

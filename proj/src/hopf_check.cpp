#include <map>
#include <sstream>

#include "h3/hopf.hpp"

namespace h3 {

namespace {

// Self-contained arithmetic on the certificate data: nothing below uses the
// group, bar complex or homology code of the library.
struct TableGroup {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table;
    std::map<std::string, int> index;
    int e = -1;

    explicit TableGroup(const nlohmann::json& j)
    {
        labels = j.at("labels").get<std::vector<std::string>>();
        table = j.at("table").get<std::vector<std::vector<int>>>();
        const int n = static_cast<int>(table.size());
        if (n == 0 || labels.size() != table.size())
            throw std::invalid_argument("certificate: malformed group");
        for (const auto& row : table)
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("certificate: table is not square");
        for (int i = 0; i < n; ++i) {
            index[labels[i]] = i;
            bool id = true;
            for (int x = 0; x < n && id; ++x)
                id = table[i][x] == x && table[x][i] == x;
            if (id)
                e = i;
        }
        if (e < 0)
            throw std::invalid_argument("certificate: table has no identity");
    }
    int mul(int a, int b) const { return table[a][b]; }
    int inv(int a) const
    {
        for (int x = 0; x < static_cast<int>(table.size()); ++x)
            if (table[a][x] == e)
                return x;
        throw std::invalid_argument("certificate: element without inverse");
    }
    int at(const std::string& l) const
    {
        auto it = index.find(l);
        if (it == index.end())
            throw std::invalid_argument("certificate: unknown label '" + l + "'");
        return it->second;
    }
};

using Tuple = std::vector<int>;
using Chain = std::map<Tuple, long long>;

void add(Chain& c, const Tuple& t, long long k, int e)
{
    for (int x : t)
        if (x == e)
            return;
    if ((c[t] += k) == 0)
        c.erase(t);
}

Chain read_chain(const nlohmann::json& j, const TableGroup& g)
{
    Chain c;
    for (const auto& term : j) {
        Tuple t;
        for (const auto& l : term.at("tuple"))
            t.push_back(g.at(l.get<std::string>()));
        add(c, t, term.at("coeff").get<long long>(), g.e);
    }
    return c;
}

Chain boundary(const Chain& c, const TableGroup& g)
{
    Chain out;
    for (const auto& [t, k] : c) {
        const size_t n = t.size();
        add(out, Tuple(t.begin() + 1, t.end()), k, g.e);
        for (size_t i = 0; i + 1 < n; ++i) {
            Tuple s;
            for (size_t j = 0; j < n; ++j)
                if (j == i)
                    s.push_back(g.mul(t[i], t[i + 1]));
                else if (j != i + 1)
                    s.push_back(t[j]);
            add(out, s, (i + 1) % 2 ? -k : k, g.e);
        }
        add(out, Tuple(t.begin(), t.end() - 1), n % 2 ? -k : k, g.e);
    }
    return out;
}

Chain combine(const Chain& a, long long ka, const Chain& b, long long kb, int e)
{
    Chain out;
    for (const auto& [t, k] : a)
        add(out, t, ka * k, e);
    for (const auto& [t, k] : b)
        add(out, t, kb * k, e);
    return out;
}

// Shuffle product of chains whose entries commute, multiplied out in the group.
Chain shuffle_product(const Chain& x, const Chain& y, const TableGroup& g)
{
    Chain out;
    for (const auto& [u, ku] : x)
        for (const auto& [v, kv] : y) {
            const size_t p = u.size(), q = v.size();
            std::vector<int> mask(p + q, 1);
            std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(p), 0);
            do {
                Tuple t;
                size_t i = 0, j = 0, inversions = 0;
                for (int m : mask)
                    if (m == 0) {
                        inversions += j;
                        t.push_back(u[i++]);
                    } else {
                        t.push_back(v[j++]);
                    }
                add(out, t, inversions % 2 ? -ku * kv : ku * kv, g.e);
            } while (std::next_permutation(mask.begin(), mask.end()));
        }
    return out;
}

int evaluate_word(const std::string& w, const std::map<std::string, int>& images, const TableGroup& g)
{
    std::istringstream in(w);
    std::string tok;
    int x = g.e;
    while (in >> tok) {
        if (tok == "1")
            continue;
        bool inverse = tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0;
        std::string sym = inverse ? tok.substr(0, tok.size() - 3) : tok;
        auto it = images.find(sym);
        if (it == images.end())
            throw std::invalid_argument("certificate: unknown symbol '" + sym + "'");
        x = g.mul(x, inverse ? g.inv(it->second) : it->second);
    }
    return x;
}

Chain formula_chain(const nlohmann::json& cert, const TableGroup& g, int degree, int& s_g)
{
    std::map<std::string, int> images;
    for (const auto& [sym, l] : cert.at("images").items())
        images[sym] = g.at(l.get<std::string>());
    std::vector<std::pair<int, int>> ab;
    for (const auto& w : cert.at("words"))
        ab.emplace_back(evaluate_word(w.at("a"), images, g), evaluate_word(w.at("b"), images, g));
    std::vector<int> s{g.e};
    for (auto [a, b] : ab)
        s.push_back(g.mul(s.back(), g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))));
    s_g = s.back();
    Chain c;
    if (degree == 2) {
        for (size_t i = 1; i <= ab.size(); ++i) {
            auto [a, b] = ab[i - 1];
            add(c, {s[i - 1], a}, 1, g.e);
            add(c, {g.mul(s[i - 1], a), b}, 1, g.e);
            add(c, {g.mul(s[i], b), a}, -1, g.e);
            add(c, {s[i], b}, -1, g.e);
        }
        return c;
    }
    const int x = s_g;
    add(c, {x, g.inv(x), x}, 1, g.e);
    for (size_t i = 1; i <= ab.size(); ++i) {
        const int a = g.inv(ab[i - 1].first), b = g.inv(ab[i - 1].second);
        const int p = g.inv(s[i - 1]), q = g.inv(s[i]);
        add(c, {a, p, x}, 1, g.e);
        add(c, {a, x, p}, -1, g.e);
        add(c, {a, g.mul(b, q), x}, -1, g.e);
        add(c, {a, x, g.mul(b, q)}, 1, g.e);
        add(c, {b, g.mul(a, p), x}, 1, g.e);
        add(c, {b, x, g.mul(a, p)}, -1, g.e);
        add(c, {b, q, x}, -1, g.e);
        add(c, {b, x, q}, 1, g.e);
        add(c, {x, a, p}, 1, g.e);
        add(c, {x, a, g.mul(b, q)}, -1, g.e);
        add(c, {x, b, g.mul(a, p)}, 1, g.e);
        add(c, {x, b, q}, -1, g.e);
    }
    return c;
}

} // namespace

Report check_certificate(const nlohmann::json& cert)
{
    Report r("certificate");
    const std::string kind = cert.at("kind");
    const int degree = cert.at("degree");
    if ((kind != "lambda2" || degree != 2) && (kind != "lambda3" || degree != 3))
        throw std::invalid_argument("certificate: unknown kind");
    TableGroup g(cert.at("group"));
    Chain chain = read_chain(cert.at("chain"), g);
    int s_g = g.e;
    r.expect(formula_chain(cert, g, degree, s_g) == chain, "chain_matches_words",
             "the recorded chain differs from the formula evaluated on the words");
    Chain d = boundary(chain, g);
    r.expect(d.empty(), "boundary_zero", "boundary has " + std::to_string(d.size()) + " nonzero terms");
    if (kind == "lambda2") {
        r.expect(s_g == g.e, "words_trivial", "s_g = " + g.labels[s_g]);
        return r;
    }

    const auto& a_labels = cert.at("central_subgroup");
    std::vector<int> a;
    for (const auto& l : a_labels)
        a.push_back(g.at(l.get<std::string>()));
    r.expect(std::find(a.begin(), a.end(), s_g) != a.end(), "s_g_in_A", "s_g = " + g.labels[s_g]);

    const auto& wit = cert.at("witnesses");
    if (wit.at("pi_bounding_chain").is_null()) {
        r.skip("pi_class_zero", "no bounding chain recorded");
    } else {
        TableGroup q(cert.at("quotient").at("group"));
        std::vector<int> proj;
        for (const auto& l : cert.at("quotient").at("projection"))
            proj.push_back(q.at(l.get<std::string>()));
        Chain image;
        for (const auto& [t, k] : chain) {
            Tuple s;
            for (int x : t)
                s.push_back(proj.at(static_cast<size_t>(x)));
            add(image, s, k, q.e);
        }
        Chain c = read_chain(wit.at("pi_bounding_chain"), q);
        r.expect(boundary(c, q) == image, "pi_class_zero", "recorded chain does not bound pi_*lambda");
    }

    const auto& claims = cert.at("checks");
    if (wit.at("twice").is_null()) {
        r.skip("twice_class_in_rho_plus_image_H3A", "no bounding chain recorded");
        r.skip("twice_class_in_rho", "no bounding chain recorded");
    } else {
        const auto& tw = wit.at("twice");
        Chain rest = combine(chain, 2, {}, 0, g.e);
        bool ok = true;
        for (const auto& term : tw.at("rho_terms")) {
            Chain x = read_chain(term.at("a"), g), h = read_chain(term.at("h"), g);
            for (const auto& [t, k] : x)
                ok = ok && t.size() == 1 && std::find(a.begin(), a.end(), t[0]) != a.end();
            ok = ok && boundary(h, g).empty();
            rest = combine(rest, 1, shuffle_product(x, h, g), -term.at("coeff").get<long long>(), g.e);
        }
        for (const auto& term : tw.at("image_terms")) {
            Chain z = read_chain(term.at("cycle"), g);
            for (const auto& [t, k] : z)
                for (int x : t)
                    ok = ok && std::find(a.begin(), a.end(), x) != a.end();
            ok = ok && boundary(z, g).empty();
            rest = combine(rest, 1, z, -term.at("coeff").get<long long>(), g.e);
        }
        Chain c = read_chain(tw.at("bounding_chain"), g);
        ok = ok && boundary(c, g) == rest;
        r.expect(ok, "twice_class_in_rho_plus_image_H3A", "recorded terms and chain do not account for 2 lambda");
        if (!tw.at("image_terms").empty())
            r.skip("twice_class_in_rho", "the witness uses the image of H_3(A); claimed " +
                                             std::string(claims.value("twice_class_in_rho", false) ? "true" : "false"));
        else
            r.expect(ok, "twice_class_in_rho", "recorded terms and chain do not account for 2 lambda");
    }
    return r;
}

} // namespace h3

#include "h3/hopf.hpp"

#include <cctype>
#include <sstream>

namespace h3 {

FreeWord::FreeWord(std::vector<FreeLetter> letters) : letters_(std::move(letters))
{
    for (const auto& l : letters_)
        if (l.symbol.empty() || (l.exponent != 1 && l.exponent != -1))
            throw HopfError("free word: letters need a symbol and exponent +1 or -1");
}

FreeWord FreeWord::parse(const std::string& text)
{
    std::istringstream in(text);
    std::vector<FreeLetter> out;
    std::string tok;
    while (in >> tok) {
        if (tok == "1")
            continue;
        FreeLetter l;
        auto caret = tok.find('^');
        l.symbol = tok.substr(0, caret);
        if (caret != std::string::npos) {
            const std::string e = tok.substr(caret + 1);
            if (e == "-1")
                l.exponent = -1;
            else if (e != "1")
                throw HopfError("free word: exponent must be 1 or -1 in '" + tok + "'");
        }
        bool ok = !l.symbol.empty() && (std::isalpha(static_cast<unsigned char>(l.symbol[0])) || l.symbol[0] == '_');
        for (char c : l.symbol)
            ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok)
            throw HopfError("free word: bad symbol in '" + tok + "'");
        out.push_back(l);
    }
    return FreeWord(std::move(out));
}

FreeWord FreeWord::inverse() const
{
    std::vector<FreeLetter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out)
        l.exponent = -l.exponent;
    return FreeWord(std::move(out));
}

std::string FreeWord::str() const
{
    if (letters_.empty())
        return "1";
    std::string out;
    for (size_t i = 0; i < letters_.size(); ++i)
        out += (i ? " " : "") + letters_[i].symbol + (letters_[i].exponent < 0 ? "^-1" : "");
    return out;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b)
{
    std::vector<FreeLetter> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return FreeWord(std::move(out));
}

FreeWord commutator(const FreeWord& a, const FreeWord& b) { return a * b * a.inverse() * b.inverse(); }

// ---------------------------------------------------------------------------

PresSetup::PresSetup(FiniteGroup target, std::map<std::string, Elt> images)
    : target_(std::move(target)), images_(std::move(images))
{
    for (const auto& [sym, x] : images_)
        if (x >= target_.order())
            throw HopfError("setup: image of '" + sym + "' is not an element of the target");
}

PresSetup::PresSetup(CentralSubgroupData data, std::map<std::string, Elt> images)
    : PresSetup(data.g, std::move(images))
{
    link_ = std::move(data);
}

std::map<std::string, Elt> PresSetup::images_by_label(const FiniteGroup& g,
                                                      const std::map<std::string, std::string>& labels)
{
    std::map<std::string, Elt> out;
    for (const auto& [sym, label] : labels) {
        auto x = g.find(label);
        if (!x)
            throw HopfError("setup: unknown element label '" + label + "' for '" + sym + "'");
        out.emplace(sym, *x);
    }
    return out;
}

PresSetup PresSetup::on_quotient() const
{
    if (!link_)
        throw HopfError("setup: no central subgroup linked");
    std::map<std::string, Elt> q;
    for (const auto& [sym, x] : images_)
        q.emplace(sym, link_->proj(x));
    return PresSetup(link_->q, std::move(q));
}

Elt evaluate(const FreeWord& w, const PresSetup& setup)
{
    const FiniteGroup& g = setup.target();
    Elt x = g.identity();
    for (const auto& l : w.letters()) {
        auto it = setup.images().find(l.symbol);
        if (it == setup.images().end())
            throw HopfError("evaluate: unknown symbol '" + l.symbol + "'");
        x = g.mul(x, l.exponent > 0 ? it->second : g.inverse(it->second));
    }
    return x;
}

Elt evaluate(const CommutatorProduct& s, const PresSetup& setup)
{
    if (s.empty())
        throw HopfError("commutator product must be nonempty");
    FreeWord w;
    for (const auto& p : s)
        w = w * commutator(p.a, p.b);
    return evaluate(w, setup);
}

// ---------------------------------------------------------------------------

std::vector<SignedTuple> lambda2_terms(const CommutatorProduct& s, const PresSetup& setup)
{
    if (s.empty())
        throw HopfError("commutator product must be nonempty");
    const FiniteGroup& g = setup.target();
    std::vector<SignedTuple> out;
    Elt prev = g.identity();
    for (const auto& p : s) {
        Elt a = evaluate(p.a, setup), b = evaluate(p.b, setup);
        Elt cur = g.mul(prev, g.commutator(a, b));
        out.push_back({1, {prev, a}});
        out.push_back({1, {g.mul(prev, a), b}});
        out.push_back({-1, {g.mul(cur, b), a}});
        out.push_back({-1, {cur, b}});
        prev = cur;
    }
    return out;
}

std::vector<SignedTuple> lambda3_terms(const CommutatorProduct& s, const PresSetup& setup)
{
    const FiniteGroup& g = setup.target();
    const Elt x = evaluate(s, setup);
    std::vector<SignedTuple> out{{1, {x, g.inverse(x), x}}};
    Elt prev = g.identity();
    for (const auto& pr : s) {
        Elt a = evaluate(pr.a, setup), b = evaluate(pr.b, setup);
        Elt cur = g.mul(prev, g.commutator(a, b));
        const Elt ai = g.inverse(a), bi = g.inverse(b), p = g.inverse(prev), q = g.inverse(cur);
        const Elt bq = g.mul(bi, q), ap = g.mul(ai, p);
        std::vector<SignedTuple> block{
            {1, {ai, p, x}},   {-1, {ai, x, p}},  {-1, {ai, bq, x}}, {1, {ai, x, bq}},
            {1, {bi, ap, x}},  {-1, {bi, x, ap}}, {-1, {bi, q, x}},  {1, {bi, x, q}},
            {1, {x, ai, p}},   {-1, {x, ai, bq}}, {1, {x, bi, ap}},  {-1, {x, bi, q}},
        };
        out.insert(out.end(), block.begin(), block.end());
        prev = cur;
    }
    return out;
}

BarChain normalized_chain(const std::vector<SignedTuple>& terms, const FiniteGroup& g)
{
    BarChain c;
    for (const auto& t : terms)
        if (std::find(t.tuple.begin(), t.tuple.end(), g.identity()) == t.tuple.end())
            add_term(c, t.tuple, Integer(t.sign));
    return c;
}

namespace {

std::string terms_string(const std::vector<SignedTuple>& terms, const FiniteGroup& g)
{
    std::string out;
    for (const auto& t : terms) {
        out += t.sign < 0 ? " - [" : " + [";
        for (size_t i = 0; i < t.tuple.size(); ++i)
            out += (i ? "|" : "") + g.label(t.tuple[i]);
        out += "]";
    }
    return out;
}

BarChain verified(const std::vector<SignedTuple>& terms, const FiniteGroup& g, const char* what)
{
    BarChain c = normalized_chain(terms, g);
    BarComplex bc(g, terms.empty() ? 1 : terms.front().tuple.size());
    BarChain d = bc.boundary(c);
    if (!d.empty())
        throw BoundaryError(std::string(what) + ": boundary " + to_string(d, g) + " is nonzero for the terms" +
                            terms_string(terms, g));
    return c;
}

} // namespace

BarChain lambda2(const CommutatorProduct& s, const PresSetup& setup)
{
    const FiniteGroup& g = setup.target();
    Elt x = evaluate(s, setup);
    if (x != g.identity())
        throw HopfError("lambda2: the product of commutators evaluates to " + g.label(x) + ", not the identity");
    return verified(lambda2_terms(s, setup), g, "lambda2");
}

BarChain lambda3(const CommutatorProduct& s, const PresSetup& setup)
{
    if (!setup.link())
        throw HopfError("lambda3: the setup must be linked to a central subgroup");
    const auto& d = *setup.link();
    Elt x = evaluate(s, setup);
    if (!std::binary_search(d.a.begin(), d.a.end(), x))
        throw HopfError("lambda3: the product of commutators evaluates to " + d.g.label(x) + ", outside A");
    return verified(lambda3_terms(s, setup), d.g, "lambda3");
}

namespace {

// Generators of rho_*(A (x) H_2(G)) followed by those of the image of H_3(A),
// with the cycles realizing them.
struct TwiceWitnessBasis {
    std::vector<std::pair<BarChain, BarChain>> rho_pairs;
    std::vector<BarChain> a_cycles;
    std::vector<Element> classes;
};

TwiceWitnessBasis twice_basis(const ExtensionContext& cx)
{
    const auto& d = cx.data();
    TwiceWitnessBasis b;
    for (Elt u : h1_generator_elements(cx.ha()))
        for (const auto& h : cx.hg().generators(2)) {
            BarChain a{{{u}, 1}};
            b.classes.push_back(cx.hg().class_of(3, rho_cross(d.incl, a, h)));
            b.rho_pairs.emplace_back(a, h);
        }
    for (const auto& z : cx.ha().generators(3)) {
        BarChain zg = push_forward(d.incl, z);
        b.classes.push_back(cx.hg().class_of(3, zg));
        b.a_cycles.push_back(zg);
    }
    return b;
}

} // namespace

Report lambda3_class_checks(const CommutatorProduct& s, const PresSetup& setup, const ExtensionContext& cx)
{
    Report r;
    const auto& d = cx.data();
    BarChain lam = lambda3(s, setup);
    Element cls = cx.hg().class_of(3, lam);
    Element pi = cx.hq().class_of(3, push_forward(d.proj, lam));
    r.expect(pi.is_zero(), "pi_class_zero", "pi_*[lambda] = " + pi.str() + " in H_3(Q) = " + cx.hq().H(3).str(),
             "pi_*[lambda] = 0 in H_3(Q)");
    Element twice = Integer(2) * cls;
    r.expect(cx.rho().contains(twice), "twice_class_in_rho",
             "2[lambda] = " + twice.str() + " in H_3(G) = " + cx.hg().H(3).str() + " lies outside rho_*(A(x)H_2(G)) = " +
                 cx.rho().sub.str(),
             "2[lambda] = " + twice.str() + " lies in rho_*(A(x)H_2(G))");
    SubgroupEmbedding wider = subgroup_generated(cx.hg().H(3), twice_basis(cx).classes);
    r.expect(wider.contains(twice), "twice_class_in_rho_plus_image_H3A",
             "2[lambda] = " + twice.str() + " lies outside rho_*(A(x)H_2(G)) + i_*H_3(A) = " + wider.sub.str(),
             "2[lambda] = " + twice.str() + " lies in rho_*(A(x)H_2(G)) + i_*H_3(A)");
    auto [quo, q] = quotient(cx.rho());
    auto& inv = r.invariants();
    inv["s_g"] = d.g.label(evaluate(s, setup));
    inv["class"] = cls.str();
    inv["class_order"] = cls.order().str();
    inv["class_mod_rho"] = q(cls).str();
    inv["H_3(G)"] = cx.hg().H(3).str();
    return r;
}

// ---------------------------------------------------------------------------

namespace {

using Json = nlohmann::ordered_json;

Json chain_json(const BarChain& c, const FiniteGroup& g)
{
    Json out = Json::array();
    for (const auto& [t, k] : c) {
        std::vector<std::string> labels;
        for (Elt x : t)
            labels.push_back(g.label(x));
        Json term;
        term["coeff"] = k.to_int64();
        term["tuple"] = labels;
        out.push_back(term);
    }
    return out;
}

Json words_json(const CommutatorProduct& s)
{
    Json out = Json::array();
    for (const auto& p : s)
        out.push_back(Json{{"a", p.a.str()}, {"b", p.b.str()}});
    return out;
}

Json images_json(const PresSetup& setup)
{
    Json out = Json::object();
    for (const auto& [sym, x] : setup.images())
        out[sym] = setup.target().label(x);
    return out;
}

Json group_json(const FiniteGroup& g)
{
    Json j;
    j["name"] = g.name();
    j["labels"] = g.labels();
    j["table"] = g.table();
    return j;
}

} // namespace

Json lambda2_certificate(const CommutatorProduct& s, const PresSetup& setup, const HopfOptions& opts)
{
    BarChain lam = lambda2(s, setup);
    Json cert;
    cert["kind"] = "lambda2";
    cert["group"] = group_json(setup.target());
    cert["images"] = images_json(setup);
    cert["words"] = words_json(s);
    cert["degree"] = 2;
    cert["chain"] = chain_json(lam, setup.target());
    Json checks;
    checks["boundary_zero"] = true;
    if (setup.target().order() <= opts.bar.max_order) {
        GroupHomology h(setup.target(), opts.bar);
        checks["class"] = h.class_of(2, lam).str();
        checks["H_2"] = h.H(2).str();
    }
    cert["checks"] = checks;
    return cert;
}

Json lambda3_certificate(const CommutatorProduct& s, const PresSetup& setup, const ExtensionContext& cx,
                         const HopfOptions& opts)
{
    const auto& d = cx.data();
    BarChain lam = lambda3(s, setup);
    Report r = lambda3_class_checks(s, setup, cx);

    Json cert;
    cert["kind"] = "lambda3";
    cert["group"] = group_json(d.g);
    std::vector<std::string> a_labels, proj;
    for (Elt x : d.a)
        a_labels.push_back(d.g.label(x));
    for (Elt x = 0; x < d.g.order(); ++x)
        proj.push_back(d.q.label(d.proj(x)));
    cert["central_subgroup"] = a_labels;
    cert["quotient"] = Json{{"group", group_json(d.q)}, {"projection", proj}};
    cert["images"] = images_json(setup);
    cert["words"] = words_json(s);
    cert["degree"] = 3;
    cert["chain"] = chain_json(lam, d.g);

    Json checks;
    checks["boundary_zero"] = true;
    for (const auto& c : r.checks())
        checks[c.name] = c.verdict == Verdict::pass;
    for (const auto& [k, v] : r.invariants().items())
        checks[k] = v;
    cert["checks"] = checks;

    Json wit;
    wit["pi_bounding_chain"] = nullptr;
    wit["twice"] = nullptr;
    BarChain pi = push_forward(d.proj, lam);
    if (d.q.order() <= opts.witness_max_order && r.find("pi_class_zero")->verdict == Verdict::pass) {
        auto c = cx.hq().bounding_chain(3, pi);
        if (!c)
            throw std::logic_error("lambda3 certificate: pi_*lambda has zero class but no bounding chain");
        wit["pi_bounding_chain"] = chain_json(*c, d.q);
    }
    if (d.g.order() <= opts.witness_max_order &&
        r.find("twice_class_in_rho_plus_image_H3A")->verdict == Verdict::pass) {
        TwiceWitnessBasis b = twice_basis(cx);
        SubgroupEmbedding sub = subgroup_generated(cx.hg().H(3), b.classes);
        auto pre = sub.preimage(Integer(2) * cx.hg().class_of(3, lam));
        if (!pre)
            throw std::logic_error("lambda3 certificate: 2[lambda] left rho_*(A(x)H_2(G)) + i_*H_3(A)");
        IntVec coeffs = sub.pres.lift(*pre);
        BarChain rest = Integer(2) * lam;
        Json terms = Json::array(), a_terms = Json::array();
        for (size_t k = 0; k < b.rho_pairs.size(); ++k) {
            if (coeffs[k].is_zero())
                continue;
            const auto& [a, h] = b.rho_pairs[k];
            rest = rest + (-coeffs[k]) * rho_cross(d.incl, a, h);
            terms.push_back(Json{{"coeff", coeffs[k].to_int64()},
                                 {"a", chain_json(push_forward(d.incl, a), d.g)},
                                 {"h", chain_json(h, d.g)}});
        }
        for (size_t k = 0; k < b.a_cycles.size(); ++k) {
            const Integer& c = coeffs[b.rho_pairs.size() + k];
            if (c.is_zero())
                continue;
            rest = rest + (-c) * b.a_cycles[k];
            a_terms.push_back(Json{{"coeff", c.to_int64()}, {"cycle", chain_json(b.a_cycles[k], d.g)}});
        }
        auto c = cx.hg().bounding_chain(3, rest);
        if (!c)
            throw std::logic_error("lambda3 certificate: no bounding chain for the rest of 2 lambda");
        wit["twice"] = Json{{"rho_terms", terms}, {"image_terms", a_terms}, {"bounding_chain", chain_json(*c, d.g)}};
    }
    cert["witnesses"] = wit;
    return cert;
}

} // namespace h3

#include "h3/fgab.hpp"

#include <algorithm>
#include <sstream>

#include "h3/chain.hpp"

namespace h3 {

using intlin::SparseMat;

namespace {

bool compatible(const FgAb& a, const FgAb& b)
{
    return a.isomorphic(b) && (a.name().empty() || b.name().empty() || a.name() == b.name());
}

void require_compatible(const FgAb& a, const FgAb& b, const char* what)
{
    if (!compatible(a, b))
        throw ParentMismatch(std::string(what) + ": " + (a.name().empty() ? a.str() : a.name() + " = " + a.str()) +
                             " vs " + (b.name().empty() ? b.str() : b.name() + " = " + b.str()));
}

IntVec unit_vector(size_t n, size_t i)
{
    IntVec v(n);
    v[i] = 1;
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// FgAb

FgAb::FgAb(IntVec torsion, size_t free_rank, std::string name)
    : torsion_(std::move(torsion)), free_rank_(free_rank), name_(std::move(name))
{
    for (size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < Integer(2))
            throw std::invalid_argument("invariant factor " + torsion_[i].str() + " is not >= 2");
        if (i > 0 && !divides(torsion_[i - 1], torsion_[i]))
            throw std::invalid_argument("invariant factors " + torsion_[i - 1].str() + ", " + torsion_[i].str() +
                                        " violate the divisibility chain");
    }
}

FgAb FgAb::cyclic(const Integer& n, std::string name)
{
    if (n.is_zero())
        return FgAb({}, 1, std::move(name));
    Integer m = abs(n);
    if (m.is_one())
        return FgAb({}, 0, std::move(name));
    return FgAb({m}, 0, std::move(name));
}

FgAb FgAb::from_cyclic_orders(const IntVec& orders, std::string name)
{
    std::vector<IntVec> rels;
    for (size_t i = 0; i < orders.size(); ++i)
        if (!orders[i].is_zero()) {
            IntVec r(orders.size());
            r[i] = orders[i];
            rels.push_back(std::move(r));
        }
    return present(orders.size(), rels, std::move(name)).group;
}

FgAb FgAb::parse(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty() || s == "0" || s == "1" || s == "trivial")
        return trivial();
    for (char& ch : s)
        if (ch == ',')
            ch = '+';
    IntVec orders;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, '+')) {
        if (part.empty())
            throw std::invalid_argument("malformed group description '" + text + "'");
        if (part == "Z") {
            orders.push_back(0);
        } else if (part.rfind("Z^", 0) == 0) {
            int k = std::stoi(part.substr(2));
            for (int i = 0; i < k; ++i)
                orders.push_back(0);
        } else if (part.rfind("Z/", 0) == 0) {
            orders.push_back(Integer::parse(part.substr(2)));
        } else {
            orders.push_back(Integer::parse(part));
        }
    }
    for (const auto& o : orders)
        if (o.sign() < 0)
            throw std::invalid_argument("negative order in '" + text + "'");
    return from_cyclic_orders(orders);
}

Integer FgAb::order() const
{
    if (!is_finite())
        throw std::domain_error("order of infinite group " + str());
    Integer o(1);
    for (const auto& d : torsion_)
        o *= d;
    return o;
}

FgAb FgAb::named(std::string name) const
{
    FgAb a = *this;
    a.name_ = std::move(name);
    return a;
}

std::string FgAb::str() const
{
    if (is_trivial())
        return "0";
    std::string out;
    for (const auto& d : torsion_)
        out += (out.empty() ? "" : " + ") + ("Z/" + d.str());
    if (free_rank_ == 1)
        out += (out.empty() ? "" : " + ") + std::string("Z");
    else if (free_rank_ > 1)
        out += (out.empty() ? "" : " + ") + ("Z^" + std::to_string(free_rank_));
    return out;
}

std::ostream& operator<<(std::ostream& os, const FgAb& a) { return os << a.str(); }

IntMat FgAb::relation_matrix() const
{
    IntMat d(num_gens(), torsion_.size());
    for (size_t i = 0; i < torsion_.size(); ++i)
        d(i, i) = torsion_[i];
    return d;
}

IntVec FgAb::reduce(IntVec coords) const
{
    if (coords.size() != num_gens())
        throw std::invalid_argument("coordinate vector of length " + std::to_string(coords.size()) + " for " + str());
    for (size_t i = 0; i < torsion_.size(); ++i)
        coords[i] = mod(coords[i], torsion_[i]);
    return coords;
}

bool FgAb::is_zero(const IntVec& coords) const
{
    IntVec r = reduce(coords);
    return std::all_of(r.begin(), r.end(), [](const Integer& v) { return v.is_zero(); });
}

Element FgAb::element(IntVec coords) const { return Element(*this, std::move(coords)); }
Element FgAb::zero() const { return Element(*this, IntVec(num_gens())); }
Element FgAb::gen(size_t i) const { return Element(*this, unit_vector(num_gens(), i)); }

std::vector<Element> FgAb::elements() const
{
    if (!is_finite())
        throw std::domain_error("cannot enumerate infinite group " + str());
    std::vector<Element> out;
    IntVec c(num_gens());
    for (;;) {
        out.push_back(element(c));
        size_t k = c.size();
        while (k > 0) {
            --k;
            c[k] += Integer(1);
            if (c[k] < torsion_[k])
                break;
            c[k] = 0;
            if (k == 0) {
                k = SIZE_MAX;
                break;
            }
        }
        if (k == SIZE_MAX || c.empty())
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Element

Element::Element(FgAb parent, IntVec coords) : parent_(std::move(parent)), coords_(parent_.reduce(std::move(coords))) {}

bool Element::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& v) { return v.is_zero(); });
}

Integer Element::order() const
{
    const auto& t = parent_.torsion();
    for (size_t i = t.size(); i < coords_.size(); ++i)
        if (!coords_[i].is_zero())
            return Integer(0);
    Integer o(1);
    for (size_t i = 0; i < t.size(); ++i)
        o = lcm(o, t[i] / gcd(coords_[i], t[i]));
    return o;
}

void Element::require_same_parent(const Element& o) const { require_compatible(parent_, o.parent_, "element arithmetic"); }

Element Element::operator-() const
{
    IntVec c = coords_;
    for (auto& v : c)
        v = -v;
    return Element(parent_, std::move(c));
}

Element& Element::operator+=(const Element& o)
{
    require_same_parent(o);
    for (size_t i = 0; i < coords_.size(); ++i)
        coords_[i] += o.coords_[i];
    coords_ = parent_.reduce(std::move(coords_));
    return *this;
}

Element& Element::operator-=(const Element& o)
{
    require_same_parent(o);
    for (size_t i = 0; i < coords_.size(); ++i)
        coords_[i] -= o.coords_[i];
    coords_ = parent_.reduce(std::move(coords_));
    return *this;
}

Element operator*(const Integer& k, const Element& a)
{
    IntVec c = a.coords_;
    for (auto& v : c)
        v *= k;
    return Element(a.parent_, std::move(c));
}

bool operator==(const Element& a, const Element& b)
{
    a.require_same_parent(b);
    return a.coords_ == b.coords_;
}

std::string Element::str() const
{
    std::string s = "(";
    for (size_t i = 0; i < coords_.size(); ++i)
        s += (i ? ", " : "") + coords_[i].str();
    return s + ")";
}

std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.str(); }

// ---------------------------------------------------------------------------
// FgAbHom

FgAbHom::FgAbHom(FgAb dom, FgAb cod, IntMat matrix) : dom_(std::move(dom)), cod_(std::move(cod)), m_(std::move(matrix))
{
    if (m_.rows() != cod_.num_gens() || m_.cols() != dom_.num_gens())
        throw std::invalid_argument("homomorphism matrix is " + std::to_string(m_.rows()) + "x" +
                                    std::to_string(m_.cols()) + ", expected " + std::to_string(cod_.num_gens()) + "x" +
                                    std::to_string(dom_.num_gens()));
    for (size_t j = 0; j < m_.cols(); ++j) {
        IntVec col = cod_.reduce(m_.col(j));
        m_.set_col(j, col);
        Integer d = dom_.gen_order(j);
        if (d.is_zero())
            continue;
        for (auto& v : col)
            v *= d;
        if (!cod_.is_zero(col))
            throw std::invalid_argument("homomorphism " + dom_.str() + " -> " + cod_.str() +
                                        " is not well defined on generator " + std::to_string(j));
    }
}

FgAbHom FgAbHom::identity(const FgAb& a) { return FgAbHom(a, a, IntMat::identity(a.num_gens())); }

FgAbHom FgAbHom::zero(const FgAb& dom, const FgAb& cod) { return FgAbHom(dom, cod, IntMat(cod.num_gens(), dom.num_gens())); }

FgAbHom FgAbHom::from_images(const FgAb& dom, const FgAb& cod, const std::vector<Element>& images)
{
    if (images.size() != dom.num_gens())
        throw std::invalid_argument("from_images: wrong number of images");
    IntMat m(cod.num_gens(), dom.num_gens());
    for (size_t j = 0; j < images.size(); ++j) {
        require_compatible(images[j].parent(), cod, "from_images");
        m.set_col(j, images[j].coords());
    }
    return FgAbHom(dom, cod, std::move(m));
}

IntVec FgAbHom::apply(const IntVec& x) const { return cod_.reduce(m_ * x); }

Element FgAbHom::operator()(const Element& x) const
{
    require_compatible(x.parent(), dom_, "apply homomorphism");
    return cod_.element(m_ * x.coords());
}

bool FgAbHom::is_zero() const
{
    for (size_t j = 0; j < m_.cols(); ++j)
        if (!cod_.is_zero(m_.col(j)))
            return false;
    return true;
}

bool FgAbHom::is_injective() const { return kernel(*this).sub.is_trivial(); }

bool FgAbHom::is_surjective() const { return cokernel(*this).first.is_trivial(); }

FgAbHom FgAbHom::operator-() const
{
    IntMat m = m_;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            m(i, j) = -m(i, j);
    return FgAbHom(dom_, cod_, std::move(m));
}

FgAbHom operator+(const FgAbHom& f, const FgAbHom& g)
{
    require_compatible(f.dom_, g.dom_, "hom sum domain");
    require_compatible(f.cod_, g.cod_, "hom sum codomain");
    return FgAbHom(f.dom_, f.cod_, f.m_ + g.m_);
}

FgAbHom operator*(const Integer& k, const FgAbHom& f)
{
    IntMat m = f.m_;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            m(i, j) *= k;
    return FgAbHom(f.dom_, f.cod_, std::move(m));
}

FgAbHom compose(const FgAbHom& g, const FgAbHom& f)
{
    require_compatible(f.cod(), g.dom(), "compose");
    return FgAbHom(f.dom(), g.cod(), g.matrix() * f.matrix());
}

// ---------------------------------------------------------------------------
// Presentations

Element Presentation::project(const IntVec& symbols) const { return group.element(proj * symbols); }

Element Presentation::symbol(size_t s) const { return group.element(proj.col(s)); }

IntVec Presentation::lift(const Element& x) const
{
    require_compatible(x.parent(), group, "lift");
    return section * x.coords();
}

FgAbHom Presentation::induced(const Presentation& target, const std::vector<IntVec>& symbol_images) const
{
    if (symbol_images.size() != num_symbols())
        throw std::invalid_argument("induced: one image per symbol required");
    std::vector<Element> images;
    for (size_t k = 0; k < group.num_gens(); ++k) {
        IntVec v(target.num_symbols());
        for (size_t s = 0; s < num_symbols(); ++s) {
            const Integer& c = section(s, k);
            if (c.is_zero())
                continue;
            for (size_t t = 0; t < v.size(); ++t)
                if (!symbol_images[s][t].is_zero())
                    v[t].add_mul(c, symbol_images[s][t]);
        }
        images.push_back(target.project(v));
    }
    return FgAbHom::from_images(group, target.group, images);
}

FgAbHom Presentation::map_to(const FgAb& cod, const std::vector<Element>& symbol_images) const
{
    if (symbol_images.size() != num_symbols())
        throw std::invalid_argument("map_to: one image per symbol required");
    std::vector<Element> images;
    for (size_t k = 0; k < group.num_gens(); ++k) {
        Element v = cod.zero();
        for (size_t s = 0; s < num_symbols(); ++s)
            if (!section(s, k).is_zero())
                v += section(s, k) * symbol_images[s];
        images.push_back(std::move(v));
    }
    return FgAbHom::from_images(group, cod, images);
}

Presentation present(size_t num_symbols, const std::vector<IntVec>& relations, std::string name)
{
    SparseMat r(num_symbols, 0);
    for (const auto& rel : relations) {
        if (rel.size() != num_symbols)
            throw std::invalid_argument("relation length mismatch");
        intlin::SparseColumn col;
        for (size_t s = 0; s < num_symbols; ++s)
            if (!rel[s].is_zero())
                col.push_back({static_cast<uint32_t>(s), rel[s]});
        r.append_column(std::move(col));
    }
    return present(r, std::move(name));
}

Presentation present(const SparseMat& relations, std::string name)
{
    const size_t num_symbols = relations.rows();
    auto ck = intlin::cokernel(relations);
    Presentation p;
    p.group = FgAb(ck.torsion(), ck.free_rank(), std::move(name));
    p.proj = IntMat(p.group.num_gens(), num_symbols);
    for (size_t s = 0; s < num_symbols; ++s)
        p.proj.set_col(s, ck.coordinates(unit_vector(num_symbols, s)));
    p.section = IntMat(num_symbols, p.group.num_gens());
    for (size_t k = 0; k < p.group.num_gens(); ++k)
        p.section.set_col(k, ck.generator(k));
    return p;
}

std::pair<FgAb, FgAbHom> from_relations(const IntMat& relations)
{
    std::vector<IntVec> rows;
    for (size_t i = 0; i < relations.rows(); ++i)
        rows.push_back(relations.row(i));
    Presentation p = present(relations.cols(), rows);
    FgAbHom proj(FgAb::free(relations.cols()), p.group, p.proj);
    return {p.group, proj};
}

// ---------------------------------------------------------------------------
// Subgroups

bool SubgroupEmbedding::contains(const Element& x) const { return preimage(x).has_value(); }

std::optional<Element> SubgroupEmbedding::preimage(const Element& x) const
{
    require_compatible(x.parent(), ambient(), "subgroup membership");
    IntMat sys = intlin::hstack(generators, ambient().relation_matrix());
    auto sol = intlin::solve(sys, x.coords());
    if (!sol)
        return std::nullopt;
    IntVec c(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(generators.cols()));
    return pres.project(c);
}

SubgroupEmbedding subgroup_generated(const FgAb& ambient, const std::vector<Element>& gens, std::string name)
{
    const size_t k = gens.size();
    IntMat g(ambient.num_gens(), k);
    for (size_t j = 0; j < k; ++j) {
        require_compatible(gens[j].parent(), ambient, "subgroup_generated");
        g.set_col(j, gens[j].coords());
    }
    IntMat d = ambient.relation_matrix();
    std::vector<IntVec> rels;
    if (k > 0) {
        IntMat sys(ambient.num_gens(), k + d.cols());
        for (size_t i = 0; i < sys.rows(); ++i) {
            for (size_t j = 0; j < k; ++j)
                sys(i, j) = g(i, j);
            for (size_t j = 0; j < d.cols(); ++j)
                sys(i, k + j) = -d(i, j);
        }
        IntMat kb = sys.rows() == 0 ? IntMat::identity(sys.cols()) : intlin::kernel_basis(sys);
        for (size_t c = 0; c < kb.cols(); ++c) {
            IntVec r(k);
            for (size_t j = 0; j < k; ++j)
                r[j] = kb(j, c);
            rels.push_back(std::move(r));
        }
    }
    SubgroupEmbedding s;
    s.pres = present(k, rels, std::move(name));
    s.sub = s.pres.group;
    s.generators = g;
    s.inclusion = FgAbHom(s.sub, ambient, g * s.pres.section);
    return s;
}

FgAbHom inverse(const FgAbHom& f)
{
    if (!f.is_iso())
        throw std::invalid_argument("inverse: map " + f.dom().str() + " -> " + f.cod().str() + " is not bijective");
    std::vector<Element> gens;
    for (size_t i = 0; i < f.dom().num_gens(); ++i)
        gens.push_back(f(f.dom().gen(i)));
    auto s = subgroup_generated(f.cod(), gens);
    std::vector<Element> images;
    for (size_t k = 0; k < f.cod().num_gens(); ++k) {
        IntVec c = s.pres.lift(*s.preimage(f.cod().gen(k)));
        images.push_back(f.dom().element(std::move(c)));
    }
    return FgAbHom::from_images(f.cod(), f.dom(), images);
}

std::optional<Element> lift(const FgAbHom& f, const Element& y)
{
    std::vector<Element> gens;
    for (size_t i = 0; i < f.dom().num_gens(); ++i)
        gens.push_back(f(f.dom().gen(i)));
    auto s = subgroup_generated(f.cod(), gens);
    auto c = s.preimage(y);
    if (!c)
        return std::nullopt;
    return f.dom().element(s.pres.lift(*c));
}

SubgroupEmbedding kernel(const FgAbHom& f, std::string name)
{
    const FgAb& a = f.dom();
    const FgAb& b = f.cod();
    const size_t n = a.num_gens();
    IntMat d = b.relation_matrix();
    IntMat sys(b.num_gens(), n + d.cols());
    for (size_t i = 0; i < sys.rows(); ++i) {
        for (size_t j = 0; j < n; ++j)
            sys(i, j) = f.matrix()(i, j);
        for (size_t j = 0; j < d.cols(); ++j)
            sys(i, n + j) = -d(i, j);
    }
    IntMat kb = sys.rows() == 0 ? IntMat::identity(sys.cols()) : intlin::kernel_basis(sys);
    std::vector<Element> gens;
    for (size_t c = 0; c < kb.cols(); ++c) {
        IntVec x(n);
        for (size_t j = 0; j < n; ++j)
            x[j] = kb(j, c);
        Element e = a.element(std::move(x));
        if (!e.is_zero())
            gens.push_back(std::move(e));
    }
    return subgroup_generated(a, gens, std::move(name));
}

SubgroupEmbedding image(const FgAbHom& f, std::string name)
{
    std::vector<Element> gens;
    for (size_t j = 0; j < f.dom().num_gens(); ++j)
        gens.push_back(f.cod().element(f.matrix().col(j)));
    return subgroup_generated(f.cod(), gens, std::move(name));
}

std::pair<FgAb, FgAbHom> quotient(const SubgroupEmbedding& s, std::string name)
{
    const FgAb& a = s.ambient();
    std::vector<IntVec> rels;
    for (size_t i = 0; i < a.torsion().size(); ++i)
        rels.push_back([&] {
            IntVec r(a.num_gens());
            r[i] = a.torsion()[i];
            return r;
        }());
    for (size_t j = 0; j < s.generators.cols(); ++j)
        rels.push_back(s.generators.col(j));
    Presentation p = present(a.num_gens(), rels, std::move(name));
    return {p.group, FgAbHom(a, p.group, p.proj)};
}

std::pair<FgAb, FgAbHom> cokernel(const FgAbHom& f, std::string name) { return quotient(image(f), std::move(name)); }

bool is_subgroup_of(const SubgroupEmbedding& a, const SubgroupEmbedding& b)
{
    for (size_t j = 0; j < a.generators.cols(); ++j)
        if (!b.contains(b.ambient().element(a.generators.col(j))))
            return false;
    return true;
}

SubgroupEmbedding push_forward(const FgAbHom& f, const SubgroupEmbedding& s, std::string name)
{
    std::vector<Element> gens;
    for (size_t j = 0; j < s.generators.cols(); ++j)
        gens.push_back(f(f.dom().element(s.generators.col(j))));
    return subgroup_generated(f.cod(), gens, std::move(name));
}

DirectSum direct_sum(const std::vector<FgAb>& parts, std::string name)
{
    size_t n = 0;
    std::vector<size_t> offset;
    for (const auto& p : parts) {
        offset.push_back(n);
        n += p.num_gens();
    }
    std::vector<IntVec> rels;
    for (size_t k = 0; k < parts.size(); ++k)
        for (size_t i = 0; i < parts[k].torsion().size(); ++i) {
            IntVec r(n);
            r[offset[k] + i] = parts[k].torsion()[i];
            rels.push_back(std::move(r));
        }
    Presentation p = present(n, rels, std::move(name));
    DirectSum out;
    out.group = p.group;
    for (size_t k = 0; k < parts.size(); ++k) {
        IntMat inj(p.group.num_gens(), parts[k].num_gens());
        for (size_t i = 0; i < parts[k].num_gens(); ++i)
            inj.set_col(i, p.proj.col(offset[k] + i));
        out.injections.emplace_back(parts[k], p.group, std::move(inj));
        IntMat pr(parts[k].num_gens(), p.group.num_gens());
        for (size_t g = 0; g < p.group.num_gens(); ++g)
            for (size_t i = 0; i < parts[k].num_gens(); ++i)
                pr(i, g) = p.section(offset[k] + i, g);
        out.projections.emplace_back(p.group, parts[k], std::move(pr));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor products

Tensor::Tensor(FgAb a, FgAb b) : a_(std::move(a)), b_(std::move(b))
{
    const size_t na = a_.num_gens(), nb = b_.num_gens();
    std::vector<IntVec> rels;
    for (size_t i = 0; i < na; ++i)
        for (size_t j = 0; j < nb; ++j) {
            Integer g = gcd(a_.gen_order(i), b_.gen_order(j));
            // d_i (e_i (x) f_j) and e_j (e_i (x) f_j) together generate g (e_i (x) f_j)
            if (!g.is_zero()) {
                IntVec r(na * nb);
                r[symbol(i, j)] = g;
                rels.push_back(std::move(r));
            }
        }
    pres_ = present(na * nb, rels, "(" + a_.str() + ") (x) (" + b_.str() + ")");
}

Element Tensor::elem(const Element& x, const Element& y) const
{
    require_compatible(x.parent(), a_, "tensor left");
    require_compatible(y.parent(), b_, "tensor right");
    IntVec v(pres_.num_symbols());
    for (size_t i = 0; i < a_.num_gens(); ++i)
        if (!x.coords()[i].is_zero())
            for (size_t j = 0; j < b_.num_gens(); ++j)
                v[symbol(i, j)].add_mul(x.coords()[i], y.coords()[j]);
    return pres_.project(v);
}

FgAbHom Tensor::induced(const Tensor& target, const FgAbHom& f, const FgAbHom& g) const
{
    require_compatible(f.dom(), a_, "tensor map");
    require_compatible(g.dom(), b_, "tensor map");
    std::vector<IntVec> images(pres_.num_symbols());
    for (size_t i = 0; i < a_.num_gens(); ++i)
        for (size_t j = 0; j < b_.num_gens(); ++j) {
            IntVec v(target.pres_.num_symbols());
            for (size_t k = 0; k < target.a_.num_gens(); ++k)
                for (size_t l = 0; l < target.b_.num_gens(); ++l)
                    v[target.symbol(k, l)] = f.matrix()(k, i) * g.matrix()(l, j);
            images[symbol(i, j)] = std::move(v);
        }
    return pres_.induced(target.pres_, images);
}

// ---------------------------------------------------------------------------
// Exterior powers

ExteriorPower::ExteriorPower(FgAb a, int n) : a_(std::move(a)), n_(n)
{
    const size_t g = a_.num_gens();
    std::vector<IntVec> rels;
    if (n == 2) {
        auto sym = [&](size_t i, size_t j) { return i * g + j; };
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j) {
                Integer o = gcd(a_.gen_order(i), a_.gen_order(j));
                if (!o.is_zero()) {
                    IntVec r(g * g);
                    r[sym(i, j)] = o;
                    rels.push_back(std::move(r));
                }
                IntVec r(g * g);
                r[sym(i, j)] += Integer(1);
                if (i != j)
                    r[sym(j, i)] += Integer(1);
                rels.push_back(std::move(r));
            }
        pres_ = present(g * g, rels, "wedge2(" + a_.str() + ")");
    } else if (n == 3) {
        auto sym = [&](size_t i, size_t j, size_t k) { return (i * g + j) * g + k; };
        const size_t s = g * g * g;
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j)
                for (size_t k = 0; k < g; ++k) {
                    for (Integer o : {a_.gen_order(i), a_.gen_order(j), a_.gen_order(k)})
                        if (!o.is_zero()) {
                            IntVec r(s);
                            r[sym(i, j, k)] = o;
                            rels.push_back(std::move(r));
                        }
                    IntVec r1(s), r2(s);
                    r1[sym(i, j, k)] += Integer(1);
                    r1[sym(j, i, k)] += Integer(1);
                    r2[sym(k, i, j)] += Integer(1);
                    r2[sym(k, j, i)] += Integer(1);
                    rels.push_back(std::move(r1));
                    rels.push_back(std::move(r2));
                    if (i == j) {
                        IntVec r3(s), r4(s);
                        r3[sym(i, i, k)] = 1;
                        r4[sym(k, i, i)] = 1;
                        rels.push_back(std::move(r3));
                        rels.push_back(std::move(r4));
                    }
                }
        pres_ = present(s, rels, "wedge3(" + a_.str() + ")");
    } else {
        throw std::invalid_argument("exterior power degree must be 2 or 3");
    }
}

Element ExteriorPower::wedge(const Element& x, const Element& y) const
{
    if (n_ != 2)
        throw std::logic_error("wedge of two elements in wedge^3");
    require_compatible(x.parent(), a_, "wedge");
    require_compatible(y.parent(), a_, "wedge");
    const size_t g = a_.num_gens();
    IntVec v(g * g);
    for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j)
            v[i * g + j] = x.coords()[i] * y.coords()[j];
    return pres_.project(v);
}

Element ExteriorPower::wedge(const Element& x, const Element& y, const Element& z) const
{
    if (n_ != 3)
        throw std::logic_error("wedge of three elements in wedge^2");
    require_compatible(x.parent(), a_, "wedge");
    require_compatible(y.parent(), a_, "wedge");
    require_compatible(z.parent(), a_, "wedge");
    const size_t g = a_.num_gens();
    IntVec v(g * g * g);
    for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j)
            for (size_t k = 0; k < g; ++k)
                v[(i * g + j) * g + k] = x.coords()[i] * y.coords()[j] * z.coords()[k];
    return pres_.project(v);
}

FgAbHom ExteriorPower::induced(const ExteriorPower& target, const FgAbHom& f) const
{
    if (target.n_ != n_)
        throw std::invalid_argument("exterior power degree mismatch");
    require_compatible(f.dom(), a_, "wedge map");
    const size_t g = a_.num_gens(), h = target.a_.num_gens();
    const IntMat& m = f.matrix();
    std::vector<IntVec> images(pres_.num_symbols());
    if (n_ == 2) {
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j) {
                IntVec v(h * h);
                for (size_t k = 0; k < h; ++k)
                    for (size_t l = 0; l < h; ++l)
                        v[k * h + l] = m(k, i) * m(l, j);
                images[i * g + j] = std::move(v);
            }
    } else {
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j)
                for (size_t k = 0; k < g; ++k) {
                    IntVec v(h * h * h);
                    for (size_t a = 0; a < h; ++a)
                        for (size_t b = 0; b < h; ++b)
                            for (size_t c = 0; c < h; ++c)
                                v[(a * h + b) * h + c] = m(a, i) * m(b, j) * m(c, k);
                    images[(i * g + j) * g + k] = std::move(v);
                }
    }
    return pres_.induced(target.pres_, images);
}

FgAbHom ExteriorPower::from_tensor(const Tensor& t) const
{
    if (n_ != 2)
        throw std::logic_error("from_tensor requires wedge^2");
    require_compatible(t.left(), a_, "wedge from tensor");
    require_compatible(t.right(), a_, "wedge from tensor");
    std::vector<IntVec> images;
    for (size_t s = 0; s < t.presentation().num_symbols(); ++s)
        images.push_back(unit_vector(pres_.num_symbols(), s));
    return t.presentation().induced(pres_, images);
}

// ---------------------------------------------------------------------------
// Mod 2

ModTwo::ModTwo(FgAb a) : a_(std::move(a))
{
    const size_t g = a_.num_gens();
    std::vector<IntVec> rels;
    for (size_t i = 0; i < g; ++i) {
        IntVec r(g);
        r[i] = gcd(Integer(2), a_.gen_order(i));
        rels.push_back(std::move(r));
    }
    pres_ = present(g, rels, "(" + a_.str() + ")/2");
    proj_ = FgAbHom(a_, pres_.group, pres_.proj);
}

FgAbHom ModTwo::induced(const ModTwo& target, const FgAbHom& f) const
{
    require_compatible(f.dom(), a_, "mod 2 map");
    std::vector<IntVec> images;
    for (size_t i = 0; i < a_.num_gens(); ++i)
        images.push_back(f.matrix().col(i));
    return pres_.induced(target.pres_, images);
}

// ---------------------------------------------------------------------------
// (A (x) A)_sigma

SymQuotient::SymQuotient(FgAb a) : a_(a), tensor_(a, a), mod2_(a), wedge_(a, 2)
{
    const size_t g = a_.num_gens();
    std::vector<IntVec> rels;
    for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j) {
            Integer o = gcd(a_.gen_order(i), a_.gen_order(j));
            if (!o.is_zero()) {
                IntVec r(g * g);
                r[i * g + j] = o;
                rels.push_back(std::move(r));
            }
            if (i <= j) {
                IntVec r(g * g);
                r[i * g + j] += Integer(1);
                r[j * g + i] += Integer(1);
                rels.push_back(std::move(r));
            }
        }
    pres_ = present(g * g, rels, "(" + a_.str() + " (x) " + a_.str() + ")_sigma");

    std::vector<IntVec> ident;
    for (size_t s = 0; s < g * g; ++s)
        ident.push_back(unit_vector(g * g, s));
    q_ = tensor_.presentation().induced(pres_, ident);
    to_wedge_ = pres_.induced(wedge_.presentation(), ident);

    std::vector<Element> images;
    for (size_t k = 0; k < mod2_.group().num_gens(); ++k) {
        IntVec lift = mod2_.presentation().section.col(k);
        IntVec v(g * g);
        for (size_t i = 0; i < g; ++i)
            for (size_t j = 0; j < g; ++j)
                v[i * g + j] = lift[i] * lift[j];
        images.push_back(pres_.project(v));
    }
    delta_ = FgAbHom::from_images(mod2_.group(), pres_.group, images);
}

// ---------------------------------------------------------------------------
// Presentation complexes, Tor and Ext

ChainComplex presentation_complex(const FgAb& a)
{
    const size_t n = a.num_gens(), t = a.torsion().size();
    SparseMat d(n, t);
    for (size_t i = 0; i < t; ++i)
        d.set_column(i, {{static_cast<uint32_t>(i), a.torsion()[i]}});
    return ChainComplex({n, t}, {SparseMat(), std::move(d)});
}

std::pair<IntMat, IntMat> presentation_lift(const FgAbHom& f)
{
    const FgAb& a = f.dom();
    const FgAb& b = f.cod();
    const size_t ta = a.torsion().size(), tb = b.torsion().size();
    IntMat f1(tb, ta);
    for (size_t i = 0; i < ta; ++i) {
        for (size_t j = tb; j < b.num_gens(); ++j)
            if (!f.matrix()(j, i).is_zero())
                throw std::logic_error("torsion generator mapped to a free coordinate");
        for (size_t j = 0; j < tb; ++j) {
            Integer v = f.matrix()(j, i) * a.torsion()[i];
            if (!divides(b.torsion()[j], v))
                throw std::logic_error("presentation lift is not integral");
            f1(j, i) = v / b.torsion()[j];
        }
    }
    return {f.matrix(), f1};
}

namespace {

ChainMap presentation_chain_map(const FgAbHom& f)
{
    auto [f0, f1] = presentation_lift(f);
    return ChainMap({SparseMat::from_dense(f0), SparseMat::from_dense(f1)});
}

} // namespace

Tor::Tor(FgAb a, FgAb b) : a_(std::move(a)), b_(std::move(b))
{
    c_ = std::make_unique<ChainComplex>(tensor(presentation_complex(a_), presentation_complex(b_), 2));
    h_ = std::make_unique<Homology>(*c_, 1, "Tor(" + a_.str() + ", " + b_.str() + ")");
}

Tor::~Tor() = default;
Tor::Tor(Tor&&) noexcept = default;
Tor::Tor(const Tor& o)
    : a_(o.a_), b_(o.b_), c_(std::make_unique<ChainComplex>(*o.c_)), h_(std::make_unique<Homology>(*o.h_))
{
}

const FgAb& Tor::group() const { return h_->group(); }
const ChainComplex& Tor::complex() const { return *c_; }

FgAbHom Tor::induced(const Tor& target, const FgAbHom& f, const FgAbHom& g) const
{
    require_compatible(f.dom(), a_, "Tor map");
    require_compatible(g.dom(), b_, "Tor map");
    require_compatible(f.cod(), target.a_, "Tor map");
    require_compatible(g.cod(), target.b_, "Tor map");
    auto pa = presentation_complex(a_), pb = presentation_complex(b_);
    auto qa = presentation_complex(target.a_), qb = presentation_complex(target.b_);
    TensorIndex si(pa.ranks(), pb.ranks(), 2), ti(qa.ranks(), qb.ranks(), 2);
    ChainMap m = tensor(presentation_chain_map(f), presentation_chain_map(g), si, ti);
    return induced_map(m, *h_, *target.h_);
}

FgAbHom Tor::swap() const
{
    require_compatible(a_, b_, "Tor swap");
    auto pa = presentation_complex(a_);
    TensorIndex idx(pa.ranks(), pa.ranks(), 2);
    return induced_map(*h_, *h_, [&](const IntVec& z) {
        IntVec out(z.size());
        for (size_t k = 0; k < z.size(); ++k) {
            if (z[k].is_zero())
                continue;
            auto [p, i, q, j] = idx.decode(1, k);
            size_t t = idx.index(q, j, p, i);
            if ((p * q) % 2 == 1)
                out[t] -= z[k];
            else
                out[t] += z[k];
        }
        return out;
    });
}

Ext1::Ext1(FgAb a) : a_(std::move(a))
{
    const size_t t = a_.torsion().size();
    std::vector<IntVec> rels;
    for (size_t i = 0; i < t; ++i) {
        IntVec r(t);
        r[i] = a_.torsion()[i];
        rels.push_back(std::move(r));
    }
    pres_ = present(t, rels, "Ext(" + a_.str() + ", Z)");
}

FgAbHom Ext1::induced(const Ext1& source, const FgAbHom& f) const
{
    require_compatible(f.dom(), a_, "Ext map");
    require_compatible(f.cod(), source.a_, "Ext map");
    auto [f0, f1] = presentation_lift(f);
    std::vector<IntVec> images;
    for (size_t j = 0; j < f1.rows(); ++j)
        images.push_back(f1.row(j));
    return source.pres_.induced(pres_, images);
}

SubgroupEmbedding involution_invariants(const FgAbHom& t, int sign, std::string name)
{
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("involution sign must be +1 or -1");
    require_compatible(t.dom(), t.cod(), "involution");
    FgAbHom id = FgAbHom::identity(t.dom());
    if (!(compose(t, t) - id).is_zero())
        throw std::invalid_argument("map is not an involution");
    return kernel(id - Integer(sign) * t, std::move(name));
}

} // namespace h3

#include "cokernel_builder.hpp"
#include "snf_detail.hpp"

namespace h3::intlin {

IntVec Cokernel::apply_transform(const IntVec& x) const
{
    if (x.size() != m_)
        throw std::invalid_argument("cokernel: vector length " + std::to_string(x.size()) + " != ambient " +
                                    std::to_string(m_));
    IntVec y = x;
    for (const auto& op : ops_) {
        if (const auto* ax = std::get_if<AxpyOp>(&op)) {
            const Integer& p = y[ax->pivot];
            if (p.is_zero())
                continue;
            for (const auto& [i, q] : ax->targets)
                y[i].sub_mul(q, p);
        } else {
            const auto& mx = std::get<MixOp>(op);
            Integer yr = y[mx.r], yj = y[mx.j];
            y[mx.r] = mx.a11 * yr + mx.a12 * yj;
            y[mx.j] = mx.a21 * yr + mx.a22 * yj;
        }
    }
    return y;
}

IntVec Cokernel::apply_inverse(const IntVec& y_in) const
{
    if (y_in.size() != m_)
        throw std::invalid_argument("cokernel: vector length mismatch");
    IntVec y = y_in;
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        if (const auto* ax = std::get_if<AxpyOp>(&*it)) {
            const Integer& p = y[ax->pivot];
            if (p.is_zero())
                continue;
            for (const auto& [i, q] : ax->targets)
                y[i].add_mul(q, p);
        } else {
            const auto& mx = std::get<MixOp>(*it);
            Integer yr = y[mx.r], yj = y[mx.j];
            y[mx.r] = mx.a22 * yr - mx.a12 * yj;
            y[mx.j] = mx.a11 * yj - mx.a21 * yr;
        }
    }
    return y;
}

IntVec Cokernel::block_part(const IntVec& y) const
{
    size_t b = block_rows_.size();
    IntVec z(b);
    for (size_t s = 0; s < b; ++s)
        for (size_t t = 0; t < b; ++t)
            if (!y[block_rows_[t]].is_zero() && !block_u_(s, t).is_zero())
                z[s].add_mul(block_u_(s, t), y[block_rows_[t]]);
    return z;
}

IntVec Cokernel::coordinates(const IntVec& x) const
{
    IntVec y = apply_transform(x);
    IntVec z = block_part(y);
    IntVec out;
    out.reserve(num_generators());
    for (size_t k = 0; k < torsion_.size(); ++k)
        out.push_back(mod(z[torsion_slots_[k].index], torsion_[k]));
    for (const auto& s : free_slots_)
        out.push_back(s.in_block ? z[s.index] : y[s.index]);
    return out;
}

IntVec Cokernel::free_coordinates(const IntVec& x) const
{
    IntVec y = apply_transform(x);
    IntVec z = block_part(y);
    IntVec out;
    out.reserve(free_slots_.size());
    for (const auto& s : free_slots_)
        out.push_back(s.in_block ? z[s.index] : y[s.index]);
    return out;
}

IntVec Cokernel::generator(size_t index) const
{
    if (index >= num_generators())
        throw std::out_of_range("cokernel generator index");
    const Slot& s = index < torsion_.size() ? torsion_slots_[index] : free_slots_[index - torsion_.size()];
    IntVec y(m_);
    if (s.in_block) {
        for (size_t t = 0; t < block_rows_.size(); ++t)
            y[block_rows_[t]] = block_uinv_(t, s.index);
    } else {
        y[s.index] = 1;
    }
    return apply_inverse(y);
}

bool Cokernel::in_image(const IntVec& x) const
{
    IntVec y = apply_transform(x);
    IntVec z = block_part(y);
    for (size_t s = 0; s < z.size(); ++s) {
        const Integer& d = block_diag_[s];
        if (d.is_zero() ? !z[s].is_zero() : !divides(d, z[s]))
            return false;
    }
    for (uint32_t r : free_rows_)
        if (!y[r].is_zero())
            return false;
    return true;
}

IntVec Cokernel::smith_diagonal() const
{
    IntVec d(unit_rows_.size(), Integer(1));
    for (const auto& v : block_diag_)
        if (!v.is_zero())
            d.push_back(v);
    return d;
}

void Cokernel::finalize()
{
    rank_ = unit_rows_.size();
    torsion_.clear();
    torsion_slots_.clear();
    free_slots_.clear();
    for (size_t s = 0; s < block_diag_.size(); ++s) {
        const Integer& d = block_diag_[s];
        if (d.is_zero())
            free_slots_.push_back({true, s});
        else {
            ++rank_;
            if (!d.is_one()) {
                torsion_.push_back(d);
                torsion_slots_.push_back({true, s});
            }
        }
    }
    for (uint32_t r : free_rows_)
        free_slots_.push_back({false, r});
}

void CokernelBuilder::set_block(Cokernel& c, std::vector<uint32_t> block_rows, const IntMat& block)
{
    c.block_rows_ = std::move(block_rows);
    auto f = detail::snf_full(block, true, false);
    c.block_u_ = std::move(f.U);
    c.block_uinv_ = std::move(f.Uinv);
    c.block_diag_.assign(c.block_rows_.size(), Integer(0));
    for (size_t s = 0; s < f.rank; ++s)
        c.block_diag_[s] = f.S(s, s);
}

Cokernel cokernel_reference(const IntMat& m)
{
    Cokernel c;
    CokernelBuilder::init(c, m.rows());
    std::vector<uint32_t> rows(m.rows());
    for (size_t i = 0; i < rows.size(); ++i)
        rows[i] = static_cast<uint32_t>(i);
    CokernelBuilder::set_block(c, std::move(rows), m);
    CokernelBuilder::finish(c);
    return c;
}

} // namespace h3::intlin

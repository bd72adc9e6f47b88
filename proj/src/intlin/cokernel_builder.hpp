#pragma once

#include "h3/intlin.hpp"

namespace h3::intlin {

class CokernelBuilder {
public:
    static void init(Cokernel& c, size_t m) { c.m_ = m; }
    static void push_op(Cokernel& c, RowOp op) { c.ops_.push_back(std::move(op)); }
    static void add_unit_row(Cokernel& c, uint32_t r) { c.unit_rows_.push_back(r); }
    static void add_free_row(Cokernel& c, uint32_t r) { c.free_rows_.push_back(r); }
    static void set_block(Cokernel& c, std::vector<uint32_t> block_rows, const IntMat& block);
    static void finish(Cokernel& c) { c.finalize(); }
};

} // namespace h3::intlin

#pragma once

#include "h3/intlin.hpp"

namespace h3::intlin::detail {

struct FullSnf {
    IntMat U, Uinv, S, V;
    size_t rank = 0;
};

// U * M * V == S, U * Uinv == I. Uinv and V are only maintained when requested.
FullSnf snf_full(const IntMat& m, bool want_uinv, bool want_v);

} // namespace h3::intlin::detail

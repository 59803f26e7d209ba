#pragma once

#include <gmpxx.h>

#include <cstddef>

#include "hsurf/errors.hpp"

namespace hsurf::detail {

// Smallest N (up to cap) with bound(N) <= target; bound must be decreasing for large N.
template <class Bound>
long pick_terms(Bound bound, const mpq_class& target, std::size_t cap) {
    long hi = 8;
    while (bound(hi) > target) {
        hi *= 2;
        if (static_cast<std::size_t>(hi) > 2 * cap) throw PrecisionExhausted("series tail cannot reach the requested precision");
    }
    long lo = hi / 2;
    while (lo + 1 < hi) {
        long mid = (lo + hi) / 2;
        if (bound(mid) <= target) hi = mid;
        else lo = mid;
    }
    if (static_cast<std::size_t>(hi) > cap) throw PrecisionExhausted("series tail cannot reach the requested precision");
    return hi;
}

}  // namespace hsurf::detail

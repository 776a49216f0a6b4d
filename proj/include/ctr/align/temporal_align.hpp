#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctr/trip/trip_store.hpp"

namespace ctr::align {

/// Time codes permuted into suffix-array order: icode_psi[i] = Icode[A[i]].
struct aligned_times {
    std::vector<std::uint64_t> icode_psi;
    std::uint64_t sigma_t = 0;
};

inline aligned_times align_times(const trip::trip_store& st, std::span<const std::uint32_t> sa) {
    if (sa.size() != st.icode.size()) fail(errc::length_mismatch, "suffix array and Icode differ in length");
    aligned_times out{std::vector<std::uint64_t>(sa.size()), st.sigma_t};
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] >= st.icode.size()) fail(errc::position_out_of_range, "suffix array entry");
        out.icode_psi[i] = st.icode[sa[i]];
    }
    return out;
}

}  // namespace ctr::align

#pragma once

#include <vector>

#include "rational.hpp"

namespace desing {

/// Rank of a set of row vectors over Q.
inline std::size_t rank(std::vector<std::vector<Rat>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[pivot], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            Rat f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        ++r;
    }
    return r;
}

inline bool independent(const std::vector<std::vector<Rat>>& rows) { return rank(rows) == rows.size(); }

inline std::vector<Rat> unit_vector(std::size_t n, std::size_t i) {
    std::vector<Rat> v(n, Rat(0));
    v[i] = 1;
    return v;
}

} // namespace desing

#pragma once

// Exhaustive-enumeration homology. Shares no code with the reduction engine
// beyond the complex itself: every chain of every dimension is listed, its
// boundary evaluated from the incidence table, and kernel and image sizes are
// counted directly.

#include <bit>
#include <cstdint>
#include <map>
#include <unordered_set>
#include <vector>

#include "deschom/cell_complex.hpp"
#include "deschom/error.hpp"
#include "deschom/homology.hpp"

namespace deschom {

inline constexpr std::size_t kDefaultOracleBound = 14;

inline HomologyResult oracle_homology(const CellComplex& k, std::size_t max_cells = kDefaultOracleBound) {
    if (k.size() > max_cells)
        throw Error(ErrorCode::TooLarge, "complex has " + std::to_string(k.size()) + " cells, enumeration bound is " +
                                             std::to_string(max_cells));
    if (auto report = validate(k); !report.valid())
        throw Error(ErrorCode::InvalidComplex, report.violations.front().describe());
    const int top = k.max_dim();
    for (int p = 0; p <= top; ++p)
        if (k.count(p) > 24) throw Error(ErrorCode::TooLarge, "too many cells in one dimension to enumerate");

    // Boundary of each single cell as a bit mask over the cells one dimension down.
    std::vector<std::vector<std::uint64_t>> cell_boundary(static_cast<std::size_t>(top + 2));
    for (int p = 1; p <= top; ++p) {
        const auto faces = k.cells(p - 1);
        for (const auto& id : k.cells(p)) {
            std::uint64_t mask = 0;
            for (std::size_t i = 0; i < faces.size(); ++i)
                if (k.degree(id, faces[i]) % 2 != 0) mask |= std::uint64_t{1} << i;
            cell_boundary[static_cast<std::size_t>(p)].push_back(mask);
        }
    }
    auto chain_boundary = [&](int p, std::uint64_t chain) {
        std::uint64_t out = 0;
        const auto& cb = cell_boundary[static_cast<std::size_t>(p)];
        for (std::size_t i = 0; i < cb.size(); ++i)
            if (chain >> i & 1U) out ^= cb[i];
        return out;
    };

    std::vector<std::size_t> kernel_size(static_cast<std::size_t>(top + 2), 1);
    std::vector<std::size_t> image_size(static_cast<std::size_t>(top + 2), 1);
    for (int p = 0; p <= top; ++p) {
        const std::uint64_t n = std::uint64_t{1} << k.count(p);
        std::size_t zeros = 0;
        std::unordered_set<std::uint64_t> images;
        for (std::uint64_t c = 0; c < n; ++c) {
            const std::uint64_t b = p == 0 ? 0 : chain_boundary(p, c);
            if (b == 0) ++zeros;
            images.insert(b);
        }
        kernel_size[static_cast<std::size_t>(p)] = zeros;
        if (p >= 1) image_size[static_cast<std::size_t>(p - 1)] = images.size();
    }

    HomologyResult result;
    for (int p = 0; p <= top; ++p) {
        DimensionHomology d;
        d.dim = p;
        d.cells = k.count(p);
        // Subspace sizes are powers of two; their logs are the ranks.
        d.cycle_rank = static_cast<std::size_t>(std::countr_zero(kernel_size[static_cast<std::size_t>(p)]));
        d.boundary_rank = static_cast<std::size_t>(std::countr_zero(image_size[static_cast<std::size_t>(p)]));
        d.betti = d.cycle_rank - d.boundary_rank;
        result.dims.push_back(d);
    }
    return result;
}

} // namespace deschom

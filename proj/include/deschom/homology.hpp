#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "deschom/cell_complex.hpp"
#include "deschom/error.hpp"
#include "deschom/gf2.hpp"

namespace deschom {

/// A p-chain with coefficients in Z/2, stored as the set of cells carrying
/// coefficient 1.
struct Chain {
    int dim = 0;
    std::set<CellId> support;

    bool empty() const noexcept { return support.empty(); }

    friend bool operator==(const Chain&, const Chain&) = default;
};

inline Chain chain_add(const Chain& a, const Chain& b) {
    if (a.dim != b.dim)
        throw Error(ErrorCode::DimensionMismatch,
                    "cannot add chains of dimension " + std::to_string(a.dim) + " and " + std::to_string(b.dim));
    Chain out{a.dim, {}};
    std::set_symmetric_difference(a.support.begin(), a.support.end(), b.support.begin(), b.support.end(),
                                  std::inserter(out.support, out.support.end()));
    return out;
}

inline Chain operator+(const Chain& a, const Chain& b) { return chain_add(a, b); }

namespace detail {

inline void check_chain(const CellComplex& k, const Chain& c) {
    for (const auto& id : c.support) {
        if (!k.contains(id)) throw Error(ErrorCode::ForeignCell, "chain cell '" + id + "' is not in the complex");
        if (k.dimension(id) != c.dim)
            throw Error(ErrorCode::DimensionMismatch, "chain cell '" + id + "' is not a " + std::to_string(c.dim) + "-cell");
    }
}

inline gf2::BitVector indicator(const CellComplex& k, const Chain& c) {
    const auto basis = k.cells(c.dim);
    gf2::BitVector v(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c.support.contains(basis[i])) v.set(i);
    return v;
}

inline Chain from_indicator(const CellComplex& k, int dim, const gf2::BitVector& v) {
    const auto basis = k.cells(dim);
    Chain c{dim, {}};
    for (auto i = v.find_first(); i != gf2::BitVector::npos; i = v.find_next(i)) c.support.insert(basis[i]);
    return c;
}

} // namespace detail

/// Boundary summed straight from the incidence table; 0-chains map to the
/// empty (-1)-chain.
inline Chain boundary_of(const CellComplex& k, const Chain& c) {
    detail::check_chain(k, c);
    Chain out{c.dim - 1, {}};
    if (c.dim == 0) return out;
    std::map<CellId, Degree> acc;
    for (const auto& id : c.support)
        for (const auto& [face, degree] : k.boundary(id)) acc[face] += degree;
    for (const auto& [face, total] : acc)
        if (total % 2 != 0) out.support.insert(face);
    return out;
}

inline std::vector<Chain> cycle_basis(const CellComplex& k, int p) {
    std::vector<Chain> out;
    for (const auto& v : gf2::kernel_basis(boundary_matrix(k, p))) out.push_back(detail::from_indicator(k, p, v));
    return out;
}

inline bool is_boundary(const CellComplex& k, const Chain& c) {
    detail::check_chain(k, c);
    if (c.empty()) return true;
    return gf2::reduce_columns(boundary_matrix(k, c.dim + 1)).in_span(detail::indicator(k, c));
}

struct DimensionHomology {
    int dim = 0;
    std::size_t cells = 0;
    std::size_t cycle_rank = 0;
    std::size_t boundary_rank = 0;
    std::size_t betti = 0;
    std::vector<Chain> generators;
};

struct HomologyResult {
    std::vector<DimensionHomology> dims;

    std::vector<std::size_t> betti() const {
        std::vector<std::size_t> out;
        for (const auto& d : dims) out.push_back(d.betti);
        return out;
    }
};

/// Homology in dimensions 0..max_p (default: the complex's top dimension).
/// Dimensions beyond the top report zero cells and zero ranks.
inline HomologyResult homology(const CellComplex& k, std::optional<int> max_p = std::nullopt) {
    if (auto report = validate(k); !report.valid())
        throw Error(ErrorCode::InvalidComplex, report.violations.front().describe());
    const int top = max_p.value_or(k.max_dim());
    HomologyResult result;
    if (top < 0) return result;

    // Reductions for dimensions 0..top+1; reduction p is of the p-th boundary.
    std::vector<gf2::ColumnReduction> reductions;
    for (int p = 0; p <= top + 1; ++p) reductions.push_back(gf2::reduce_columns(boundary_matrix(k, p)));

    for (int p = 0; p <= top; ++p) {
        const auto& here = reductions[static_cast<std::size_t>(p)];
        const auto& above = reductions[static_cast<std::size_t>(p) + 1];
        DimensionHomology d;
        d.dim = p;
        d.cells = k.count(p);
        d.cycle_rank = d.cells - here.rank;
        d.boundary_rank = above.rank;
        d.betti = d.cycle_rank - d.boundary_rank;

        // Extend a basis of the image by kernel vectors, in kernel order; the
        // kernel vectors that extend it are the generators.
        gf2::ColumnReduction span;
        span.rows = d.cells;
        span.pivot_owner.assign(d.cells, std::nullopt);
        for (const auto& col : above.reduced) {
            if (col.none()) continue;
            span.pivot_owner[col.find_first()] = span.reduced.size();
            span.reduced.push_back(col);
            span.transform.emplace_back();
        }
        for (std::size_t c = 0; c < here.reduced.size(); ++c) {
            if (here.reduced[c].any()) continue;
            const auto& z = here.transform[c];
            auto rem = span.reduce(z);
            if (rem.none()) continue;
            span.pivot_owner[rem.find_first()] = span.reduced.size();
            span.reduced.push_back(std::move(rem));
            span.transform.emplace_back();
            d.generators.push_back(detail::from_indicator(k, p, z));
        }
        result.dims.push_back(std::move(d));
    }
    return result;
}

inline void write_homology(std::ostream& os, const HomologyResult& h, bool with_generators = false) {
    for (const auto& d : h.dims) {
        os << "dim " << d.dim << " cells " << d.cells << " cycle_rank " << d.cycle_rank << " boundary_rank "
           << d.boundary_rank << " betti " << d.betti << '\n';
        if (!with_generators) continue;
        for (const auto& g : d.generators) {
            os << "generator " << d.dim;
            for (const auto& id : g.support) os << ' ' << id;
            os << '\n';
        }
    }
    os << "betti";
    for (auto b : h.betti()) os << ' ' << b;
    os << '\n';
}

inline std::string format_homology(const HomologyResult& h, bool with_generators = false) {
    std::ostringstream os;
    write_homology(os, h, with_generators);
    return os.str();
}

} // namespace deschom

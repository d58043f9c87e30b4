#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "deschom/error.hpp"
#include "deschom/gf2.hpp"

namespace deschom {

using CellId = std::string;
using Degree = std::int64_t;
using BoundaryList = std::vector<std::pair<CellId, Degree>>;

/// A finite CW complex reduced to its combinatorics: every cell has a
/// dimension, and every p-cell records the integer incidence degree with
/// which its attaching map covers each (p-1)-cell. Degrees are kept as given;
/// homology reads them mod 2.
class CellComplex {
public:
    CellComplex() = default;

    /// Inserts a cell whose faces are already present. Repeated faces in
    /// `boundary` accumulate their degrees.
    void add_cell(const CellId& id, int dim, const BoundaryList& boundary = {}) {
        if (id.empty()) throw Error(ErrorCode::InvalidArgument, "cell id must be non-empty");
        if (dim < 0) throw Error(ErrorCode::InvalidArgument, "negative dimension for cell '" + id + "'");
        if (dims_.contains(id)) throw Error(ErrorCode::DuplicateId, "cell '" + id + "' already exists");
        std::map<CellId, Degree> faces;
        for (const auto& [face, degree] : boundary) {
            auto it = dims_.find(face);
            if (it == dims_.end())
                throw Error(ErrorCode::MissingFace, "face '" + face + "' of '" + id + "' is not in the complex");
            if (it->second != dim - 1)
                throw Error(ErrorCode::DimensionMismatch, "face '" + face + "' has dimension " +
                                                              std::to_string(it->second) + ", expected " +
                                                              std::to_string(dim - 1));
            faces[face] += degree;
        }
        insert(id, dim, std::move(faces));
    }

    /// Builds a complex without checking face references or dimensions, so
    /// that malformed inputs can be handed to validate().
    static CellComplex from_tables(const std::map<CellId, int>& dims,
                                   const std::map<CellId, std::map<CellId, Degree>>& boundaries) {
        CellComplex k;
        for (const auto& [id, dim] : dims) {
            auto it = boundaries.find(id);
            k.insert(id, dim, it == boundaries.end() ? std::map<CellId, Degree>{} : it->second);
        }
        return k;
    }

    bool contains(const CellId& id) const { return dims_.contains(id); }
    bool empty() const noexcept { return dims_.empty(); }
    std::size_t size() const noexcept { return dims_.size(); }

    int dimension(const CellId& id) const {
        auto it = dims_.find(id);
        if (it == dims_.end()) throw Error(ErrorCode::ForeignCell, "cell '" + id + "' is not in the complex");
        return it->second;
    }

    /// -1 for the empty complex.
    int max_dim() const { return by_dim_.empty() ? -1 : by_dim_.rbegin()->first; }

    std::size_t count(int dim) const {
        auto it = by_dim_.find(dim);
        return it == by_dim_.end() ? 0 : it->second.size();
    }

    /// p-cells in lexicographic id order; this is the basis order used by
    /// every matrix and chain.
    std::vector<CellId> cells(int dim) const {
        auto it = by_dim_.find(dim);
        if (it == by_dim_.end()) return {};
        return {it->second.begin(), it->second.end()};
    }

    /// All cells ordered by (dimension, id).
    std::vector<CellId> cells() const {
        std::vector<CellId> out;
        out.reserve(dims_.size());
        for (const auto& [dim, ids] : by_dim_) out.insert(out.end(), ids.begin(), ids.end());
        return out;
    }

    const std::map<CellId, Degree>& boundary(const CellId& id) const {
        auto it = boundary_.find(id);
        if (it == boundary_.end()) throw Error(ErrorCode::ForeignCell, "cell '" + id + "' is not in the complex");
        return it->second;
    }

    Degree degree(const CellId& cell, const CellId& face) const {
        const auto& b = boundary(cell);
        auto it = b.find(face);
        return it == b.end() ? 0 : it->second;
    }

    /// Cells whose boundary lists `id`, at any degree.
    std::vector<CellId> cofaces(const CellId& id) const {
        std::vector<CellId> out;
        for (const auto& [cell, faces] : boundary_)
            if (faces.contains(id)) out.push_back(cell);
        return out;
    }

    const std::map<CellId, int>& dimensions() const noexcept { return dims_; }

    friend bool operator==(const CellComplex& a, const CellComplex& b) {
        return a.dims_ == b.dims_ && a.boundary_ == b.boundary_;
    }

private:
    void insert(const CellId& id, int dim, std::map<CellId, Degree> faces) {
        dims_.emplace(id, dim);
        boundary_.emplace(id, std::move(faces));
        by_dim_[dim].insert(id);
    }

    std::map<CellId, int> dims_;
    std::map<CellId, std::map<CellId, Degree>> boundary_;
    std::map<int, std::set<CellId>> by_dim_;
};

/// Sub-complex on `keep`, retaining incidences whose both ends survive.
inline CellComplex induced_subcomplex(const CellComplex& k, const std::set<CellId>& keep) {
    std::map<CellId, int> dims;
    std::map<CellId, std::map<CellId, Degree>> bnd;
    for (const auto& id : keep) {
        dims[id] = k.dimension(id);
        auto& faces = bnd[id];
        for (const auto& [face, degree] : k.boundary(id))
            if (keep.contains(face)) faces.emplace(face, degree);
    }
    return CellComplex::from_tables(dims, bnd);
}

struct Skeleton {
    int level = 0;
    CellComplex complex;
};

inline Skeleton skeleton(const CellComplex& k, int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "skeleton level must be non-negative");
    std::set<CellId> keep;
    for (const auto& [id, dim] : k.dimensions())
        if (dim <= n) keep.insert(id);
    return {n, induced_subcomplex(k, keep)};
}

enum class ViolationKind {
    OddComposite,      // mod-2 coefficient of the (p, p-2) composite boundary is 1
    IntegerComposite,  // integer composite is nonzero but even; warning only
    DanglingFace,
    DimensionMismatch,
};

inline std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::OddComposite: return "odd-composite";
    case ViolationKind::IntegerComposite: return "integer-composite";
    case ViolationKind::DanglingFace: return "dangling-face";
    case ViolationKind::DimensionMismatch: return "dimension-mismatch";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    CellId cell;
    CellId face;
    Degree coefficient = 0;

    std::string describe() const {
        std::string s(to_string(kind));
        s += " cell=" + cell + " face=" + face;
        if (kind == ViolationKind::OddComposite || kind == ViolationKind::IntegerComposite)
            s += " coefficient=" + std::to_string(coefficient);
        return s;
    }

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<Violation> warnings;

    bool valid() const noexcept { return violations.empty(); }
};

inline ValidationReport validate(const CellComplex& k) {
    ValidationReport report;
    for (const auto& id : k.cells()) {
        const int dim = k.dimension(id);
        for (const auto& [face, degree] : k.boundary(id)) {
            if (!k.contains(face))
                report.violations.push_back({ViolationKind::DanglingFace, id, face, degree});
            else if (k.dimension(face) != dim - 1)
                report.violations.push_back({ViolationKind::DimensionMismatch, id, face, degree});
        }
    }
    for (const auto& id : k.cells()) {
        std::map<CellId, Degree> composite;
        for (const auto& [mid, d1] : k.boundary(id)) {
            if (!k.contains(mid)) continue;
            for (const auto& [low, d2] : k.boundary(mid)) composite[low] += d1 * d2;
        }
        for (const auto& [low, c] : composite) {
            if (c % 2 != 0)
                report.violations.push_back({ViolationKind::OddComposite, id, low, c});
            else if (c != 0)
                report.warnings.push_back({ViolationKind::IntegerComposite, id, low, c});
        }
    }
    return report;
}

/// Rows are (p-1)-cells and columns p-cells, both in id order; entry is the
/// incidence degree mod 2. Total in p: missing dimensions give empty axes.
inline gf2::BitMatrix boundary_matrix(const CellComplex& k, int p) {
    const auto cols = k.cells(p);
    const auto rows = p >= 1 ? k.cells(p - 1) : std::vector<CellId>{};
    std::map<CellId, std::size_t> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);
    gf2::BitMatrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [face, degree] : k.boundary(cols[c]))
            if (auto it = row_index.find(face); it != row_index.end() && degree % 2 != 0)
                m.set(it->second, c, true);
    return m;
}

inline std::int64_t euler_characteristic(const CellComplex& k) {
    std::int64_t chi = 0;
    for (int p = 0; p <= k.max_dim(); ++p)
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(k.count(p));
    return chi;
}

} // namespace deschom

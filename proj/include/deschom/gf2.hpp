#pragma once

// Dense linear algebra over the two-element field. Matrices are stored by
// column because every consumer (boundary reduction, kernel extraction,
// span membership) works column-wise.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "deschom/error.hpp"

namespace deschom::gf2 {

using BitVector = boost::dynamic_bitset<std::uint64_t>;

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols, BitVector(rows)) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return columns_.size(); }

    bool at(std::size_t r, std::size_t c) const { return columns_.at(c).test(r); }
    void set(std::size_t r, std::size_t c, bool value) { columns_.at(c).set(r, value); }

    const BitVector& column(std::size_t c) const { return columns_.at(c); }
    const std::vector<BitVector>& columns() const noexcept { return columns_; }

    bool is_zero() const {
        for (const auto& col : columns_)
            if (col.any()) return false;
        return true;
    }

    BitMatrix transpose() const {
        BitMatrix t(cols(), rows());
        for (std::size_t c = 0; c < cols(); ++c)
            for (auto r = columns_[c].find_first(); r != BitVector::npos; r = columns_[c].find_next(r))
                t.set(c, r, true);
        return t;
    }

    BitVector multiply(const BitVector& x) const {
        if (x.size() != cols())
            throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix columns");
        BitVector y(rows_);
        for (auto c = x.find_first(); c != BitVector::npos; c = x.find_next(c)) y ^= columns_[c];
        return y;
    }

    BitMatrix multiply(const BitMatrix& rhs) const {
        if (rhs.rows() != cols())
            throw Error(ErrorCode::DimensionMismatch, "inner matrix dimensions differ");
        BitMatrix out(rows_, rhs.cols());
        for (std::size_t c = 0; c < rhs.cols(); ++c) out.columns_[c] = multiply(rhs.column(c));
        return out;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::vector<BitVector> columns_;
};

/// Result of left-to-right column reduction R = M * V. A column of R is either
/// zero or has a pivot (its lowest set row) that no other reduced column shares.
struct ColumnReduction {
    std::size_t rows = 0;
    std::vector<BitVector> reduced;
    std::vector<BitVector> transform;
    /// pivot_owner[r] is the column whose pivot is row r.
    std::vector<std::optional<std::size_t>> pivot_owner;
    std::size_t rank = 0;

    /// Reduces v against the pivots; the remainder is zero iff v lies in the
    /// column span. When `combination` is given it receives the set of original
    /// columns whose sum equals v - remainder.
    BitVector reduce(BitVector v, BitVector* combination = nullptr) const {
        if (combination) *combination = BitVector(reduced.size());
        if (v.size() != rows)
            throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix rows");
        // Xoring a column with pivot r only touches rows >= r, so one ascending
        // sweep suffices. Rows without an owner stay set in the remainder.
        for (auto r = v.find_first(); r != BitVector::npos; r = v.find_next(r)) {
            if (const auto& owner = pivot_owner[r]) {
                v ^= reduced[*owner];
                if (combination) *combination ^= transform[*owner];
            }
        }
        return v;
    }

    bool in_span(const BitVector& v) const { return reduce(v).none(); }
};

inline ColumnReduction reduce_columns(const BitMatrix& m) {
    ColumnReduction out;
    out.rows = m.rows();
    out.pivot_owner.assign(m.rows(), std::nullopt);
    out.reduced.reserve(m.cols());
    out.transform.reserve(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        BitVector col = m.column(c);
        BitVector tr(m.cols());
        tr.set(c);
        for (auto r = col.find_first(); r != BitVector::npos && out.pivot_owner[r]; r = col.find_first()) {
            const std::size_t owner = *out.pivot_owner[r];
            col ^= out.reduced[owner];
            tr ^= out.transform[owner];
        }
        if (auto r = col.find_first(); r != BitVector::npos) {
            out.pivot_owner[r] = c;
            ++out.rank;
        }
        out.reduced.push_back(std::move(col));
        out.transform.push_back(std::move(tr));
    }
    return out;
}

inline std::size_t rank_mod2(const BitMatrix& m) { return reduce_columns(m).rank; }

/// Basis of {x : M x = 0}, one vector per zero column of the reduction.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    auto red = reduce_columns(m);
    std::vector<BitVector> basis;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (red.reduced[c].none()) basis.push_back(red.transform[c]);
    return basis;
}

/// Some x with M x = b, or nullopt when b is outside the column span.
inline std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.rows())
        throw Error(ErrorCode::DimensionMismatch, "right-hand side length does not match matrix rows");
    auto red = reduce_columns(m);
    BitVector x;
    if (red.reduce(b, &x).any()) return std::nullopt;
    return x;
}

} // namespace deschom::gf2

#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deschom/cell_complex.hpp"
#include "deschom/error.hpp"
#include "deschom/homology.hpp"

namespace deschom {

using Descriptor = std::vector<double>;
using DescriptorTable = std::vector<std::pair<CellId, Descriptor>>;

inline double euclidean_distance(const Descriptor& a, const Descriptor& b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::ArityMismatch, "descriptors of arity " + std::to_string(a.size()) + " and " +
                                                  std::to_string(b.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum);
}

/// A complex together with one descriptor per cell. The complex is shared, so
/// many probes (for instance the steps of a scenario) can sit over one base.
class ProbeAssignment {
public:
    const CellComplex& complex() const noexcept { return *complex_; }
    const std::shared_ptr<const CellComplex>& shared_complex() const noexcept { return complex_; }
    std::size_t arity() const noexcept { return arity_; }
    const std::map<CellId, Descriptor>& values() const noexcept { return values_; }

    const Descriptor& at(const CellId& id) const {
        auto it = values_.find(id);
        if (it == values_.end()) throw Error(ErrorCode::ForeignCell, "no descriptor for cell '" + id + "'");
        return it->second;
    }

    friend ProbeAssignment assign_probe(std::shared_ptr<const CellComplex> complex, const DescriptorTable& table);

private:
    std::shared_ptr<const CellComplex> complex_;
    std::map<CellId, Descriptor> values_;
    std::size_t arity_ = 0;
};

inline ProbeAssignment assign_probe(std::shared_ptr<const CellComplex> complex, const DescriptorTable& table) {
    if (!complex) throw Error(ErrorCode::InvalidArgument, "probe needs a complex");
    ProbeAssignment probe;
    probe.complex_ = std::move(complex);
    const CellComplex& k = *probe.complex_;
    for (const auto& [id, d] : table) {
        if (!k.contains(id)) throw Error(ErrorCode::ForeignCell, "descriptor for unknown cell '" + id + "'");
        if (probe.values_.contains(id)) throw Error(ErrorCode::DuplicateEntry, "cell '" + id + "' listed twice");
        if (probe.values_.empty())
            probe.arity_ = d.size();
        else if (d.size() != probe.arity_)
            throw Error(ErrorCode::ArityMismatch, "cell '" + id + "' has " + std::to_string(d.size()) +
                                                      " features, expected " + std::to_string(probe.arity_));
        for (double x : d)
            if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite descriptor for cell '" + id + "'");
        probe.values_.emplace(id, d);
    }
    for (const auto& id : k.cells())
        if (!probe.values_.contains(id)) throw Error(ErrorCode::MissingCell, "no descriptor for cell '" + id + "'");
    return probe;
}

inline ProbeAssignment assign_probe(const CellComplex& complex, const DescriptorTable& table) {
    return assign_probe(std::make_shared<const CellComplex>(complex), table);
}

/// The bundle projection: forget the descriptors.
inline const CellComplex& project(const ProbeAssignment& probe) { return probe.complex(); }

/// Closed Euclidean ball in descriptor space.
class DescriptorBall {
public:
    DescriptorBall(Descriptor center, double radius) : center_(std::move(center)), radius_(radius) {
        if (!(radius_ >= 0.0) || !std::isfinite(radius_))
            throw Error(ErrorCode::InvalidArgument, "ball radius must be finite and non-negative");
    }

    const Descriptor& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }

    /// Open-set style membership: a point is inside when every coordinate
    /// window of half-width radius holds it and the norm bound holds.
    bool contains(const Descriptor& x) const {
        if (x.size() != center_.size())
            throw Error(ErrorCode::ArityMismatch, "point arity differs from ball center");
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::abs(x[i] - center_[i]) > radius_) return false;
        return euclidean_distance(x, center_) <= radius_;
    }

private:
    Descriptor center_;
    double radius_;
};

enum class SubcomplexMode { Remove, Retain };

inline std::string_view to_string(SubcomplexMode mode) {
    return mode == SubcomplexMode::Remove ? "remove" : "retain";
}

inline std::optional<SubcomplexMode> parse_mode(std::string_view s) {
    if (s == "remove") return SubcomplexMode::Remove;
    if (s == "retain") return SubcomplexMode::Retain;
    return std::nullopt;
}

/// p-cells whose descriptor lies within the ball, by the norm inequality.
inline std::set<CellId> ball_members(const ProbeAssignment& probe, const DescriptorBall& ball, int p) {
    if (probe.arity() != ball.center().size() && probe.complex().count(p) > 0)
        throw Error(ErrorCode::ArityMismatch, "ball center arity differs from probe arity");
    std::set<CellId> out;
    for (const auto& id : probe.complex().cells(p))
        if (euclidean_distance(probe.at(id), ball.center()) <= ball.radius()) out.insert(id);
    return out;
}

struct DescriptiveSubcomplex {
    std::shared_ptr<const CellComplex> base;
    DescriptorBall ball;
    int dim;
    SubcomplexMode mode;
    /// Cells removed from the base, including cofaces dropped by closure.
    std::set<CellId> deleted;
    CellComplex result;
};

inline DescriptiveSubcomplex derive_subcomplex(const ProbeAssignment& probe, const DescriptorBall& ball, int p,
                                               SubcomplexMode mode) {
    const CellComplex& k = probe.complex();
    const auto members = ball_members(probe, ball, p);
    std::set<CellId> deleted;
    for (const auto& id : k.cells(p))
        if (members.contains(id) == (mode == SubcomplexMode::Remove)) deleted.insert(id);
    // Any cell with a deleted face goes too, dimension by dimension.
    for (int q = p + 1; q <= k.max_dim(); ++q)
        for (const auto& id : k.cells(q))
            for (const auto& [face, degree] : k.boundary(id))
                if (deleted.contains(face)) {
                    deleted.insert(id);
                    break;
                }
    std::set<CellId> keep;
    for (const auto& id : k.cells())
        if (!deleted.contains(id)) keep.insert(id);
    return {probe.shared_complex(), ball, p, mode, std::move(deleted), induced_subcomplex(k, keep)};
}

/// Homology of the derived subcomplex, reported up to the base complex's top
/// dimension unless `max_p` says otherwise.
inline HomologyResult descriptive_homology(const ProbeAssignment& probe, const DescriptorBall& ball, int p,
                                           SubcomplexMode mode, std::optional<int> max_p = std::nullopt) {
    return homology(derive_subcomplex(probe, ball, p, mode).result, max_p.value_or(probe.complex().max_dim()));
}

/// Distinct descriptor values carried by p-cells, in lexicographic order.
inline std::vector<Descriptor> alpha_spectrum(const ProbeAssignment& probe, int p) {
    std::set<Descriptor> seen;
    for (const auto& id : probe.complex().cells(p)) seen.insert(probe.at(id));
    return {seen.begin(), seen.end()};
}

/// Reads a chain of the subcomplex as a chain of the base complex.
inline Chain chain_inclusion(const DescriptiveSubcomplex& sub, const Chain& c) {
    for (const auto& id : c.support)
        if (!sub.result.contains(id) || sub.result.dimension(id) != c.dim)
            throw Error(ErrorCode::ForeignCell, "cell '" + id + "' is not a " + std::to_string(c.dim) +
                                                    "-cell of the subcomplex");
    return c;
}

} // namespace deschom

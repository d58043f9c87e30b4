#pragma once

// Local trivializations over cell subsets and their transition functions.
// The structure group is the translation group of descriptor space, written
// additively: t_ij(x) = phi_i(x) - phi_j(x).

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deschom/descriptive.hpp"
#include "deschom/error.hpp"
#include "deschom/text.hpp"

namespace deschom {

struct Chart {
    std::string id;
    /// Local section; its key set is the chart's cell subset.
    std::map<CellId, Descriptor> section;

    std::set<CellId> cells() const {
        std::set<CellId> out;
        for (const auto& [c, d] : section) out.insert(c);
        return out;
    }
    std::size_t arity() const { return section.empty() ? 0 : section.begin()->second.size(); }
};

namespace detail {

inline void check_chart_cells(const ProbeAssignment& probe, const std::set<CellId>& cells) {
    if (cells.empty()) throw Error(ErrorCode::EmptyChart, "chart has no cells");
    for (const auto& c : cells)
        if (!probe.complex().contains(c)) throw Error(ErrorCode::ForeignCell, "chart cell '" + c + "' is not in the complex");
}

inline Descriptor subtract(const Descriptor& a, const Descriptor& b) {
    Descriptor out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline double norm(const Descriptor& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace detail

/// Chart whose section is the probe restricted to `cells`.
inline Chart make_chart(const ProbeAssignment& probe, const std::set<CellId>& cells, std::string id) {
    detail::check_chart_cells(probe, cells);
    Chart chart{std::move(id), {}};
    for (const auto& c : cells) chart.section.emplace(c, probe.at(c));
    return chart;
}

/// Descriptor of a region: the componentwise mean over its top-dimensional cells.
inline Descriptor region_descriptor(const ProbeAssignment& probe, const std::set<CellId>& cells) {
    detail::check_chart_cells(probe, cells);
    int top = -1;
    for (const auto& c : cells) top = std::max(top, probe.complex().dimension(c));
    Descriptor mean(probe.arity(), 0.0);
    std::size_t n = 0;
    for (const auto& c : cells) {
        if (probe.complex().dimension(c) != top) continue;
        const auto& d = probe.at(c);
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += d[i];
        ++n;
    }
    for (double& x : mean) x /= static_cast<double>(n);
    return mean;
}

/// Chart whose section is constant on the region, equal to region_descriptor.
inline Chart make_region_chart(const ProbeAssignment& probe, const std::set<CellId>& cells, std::string id) {
    const auto value = region_descriptor(probe, cells);
    Chart chart{std::move(id), {}};
    for (const auto& c : cells) chart.section.emplace(c, value);
    return chart;
}

struct TransitionFunction {
    std::string from;
    std::string to;
    std::map<CellId, Descriptor> values;
};

inline std::set<CellId> overlap(const Chart& a, const Chart& b) {
    std::set<CellId> out;
    for (const auto& [c, d] : a.section)
        if (b.section.contains(c)) out.insert(c);
    return out;
}

inline TransitionFunction transition(const Chart& ci, const Chart& cj) {
    if (ci.arity() != cj.arity()) throw Error(ErrorCode::ArityMismatch, "charts '" + ci.id + "' and '" + cj.id + "' differ in arity");
    const auto shared = overlap(ci, cj);
    if (shared.empty()) throw Error(ErrorCode::EmptyOverlap, "charts '" + ci.id + "' and '" + cj.id + "' do not overlap");
    TransitionFunction t{ci.id, cj.id, {}};
    for (const auto& x : shared) t.values.emplace(x, detail::subtract(ci.section.at(x), cj.section.at(x)));
    return t;
}

/// Transition functions for every ordered pair of overlapping charts, the
/// diagonal included. Entries can be edited to model inconsistent gluing data.
struct TransitionAtlas {
    std::vector<std::string> chart_ids;
    std::map<std::pair<std::string, std::string>, TransitionFunction> transitions;

    const TransitionFunction* find(const std::string& i, const std::string& j) const {
        auto it = transitions.find({i, j});
        return it == transitions.end() ? nullptr : &it->second;
    }
};

inline TransitionAtlas build_atlas(const std::vector<Chart>& charts) {
    TransitionAtlas atlas;
    for (const auto& c : charts) atlas.chart_ids.push_back(c.id);
    for (const auto& ci : charts)
        for (const auto& cj : charts)
            if (!overlap(ci, cj).empty()) atlas.transitions.emplace(std::pair{ci.id, cj.id}, transition(ci, cj));
    return atlas;
}

enum class GaugeIdentity { Reflexivity, Symmetry, Cocycle };

inline std::string_view to_string(GaugeIdentity g) {
    switch (g) {
    case GaugeIdentity::Reflexivity: return "reflexivity";
    case GaugeIdentity::Symmetry: return "symmetry";
    case GaugeIdentity::Cocycle: return "cocycle";
    }
    return "unknown";
}

struct GaugeViolation {
    GaugeIdentity identity;
    std::vector<std::string> charts;
    CellId cell;
    Descriptor residual;
    double residual_norm = 0.0;
};

struct GaugeReport {
    std::vector<GaugeViolation> reflexivity;
    std::vector<GaugeViolation> symmetry;
    std::vector<GaugeViolation> cocycle;

    bool clean() const noexcept { return reflexivity.empty() && symmetry.empty() && cocycle.empty(); }
    std::size_t size() const noexcept { return reflexivity.size() + symmetry.size() + cocycle.size(); }
};

/// Checks t_ii = 0, t_ij + t_ji = 0 and t_ik = t_ij + t_jk (for i < j < k in
/// chart order) at every cell of the relevant overlaps.
inline GaugeReport verify_cocycle(const TransitionAtlas& atlas, double tolerance = 0.0) {
    if (!(tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
    GaugeReport report;
    auto record = [&](std::vector<GaugeViolation>& into, GaugeIdentity id, std::vector<std::string> charts,
                      const CellId& cell, Descriptor residual) {
        const double n = detail::norm(residual);
        if (n > tolerance) into.push_back({id, std::move(charts), cell, std::move(residual), n});
    };
    const auto& ids = atlas.chart_ids;
    for (const auto& i : ids)
        if (const auto* tii = atlas.find(i, i))
            for (const auto& [x, v] : tii->values) record(report.reflexivity, GaugeIdentity::Reflexivity, {i}, x, v);

    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            const auto* tij = atlas.find(ids[a], ids[b]);
            const auto* tji = atlas.find(ids[b], ids[a]);
            if (!tij || !tji) continue;
            for (const auto& [x, v] : tij->values) {
                auto it = tji->values.find(x);
                if (it == tji->values.end()) continue;
                Descriptor sum(v.size());
                for (std::size_t n = 0; n < v.size(); ++n) sum[n] = v[n] + it->second[n];
                record(report.symmetry, GaugeIdentity::Symmetry, {ids[a], ids[b]}, x, std::move(sum));
            }
        }

    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
            for (std::size_t c = b + 1; c < ids.size(); ++c) {
                const auto* tij = atlas.find(ids[a], ids[b]);
                const auto* tjk = atlas.find(ids[b], ids[c]);
                const auto* tik = atlas.find(ids[a], ids[c]);
                if (!tij || !tjk || !tik) continue;
                for (const auto& [x, vik] : tik->values) {
                    auto ij = tij->values.find(x);
                    auto jk = tjk->values.find(x);
                    if (ij == tij->values.end() || jk == tjk->values.end()) continue;
                    Descriptor r(vik.size());
                    for (std::size_t n = 0; n < r.size(); ++n) r[n] = vik[n] - (ij->second[n] + jk->second[n]);
                    record(report.cocycle, GaugeIdentity::Cocycle, {ids[a], ids[b], ids[c]}, x, std::move(r));
                }
            }
    return report;
}

inline GaugeReport verify_cocycle(const std::vector<Chart>& charts, double tolerance = 0.0) {
    return verify_cocycle(build_atlas(charts), tolerance);
}

/// Cells of the chart where its section disagrees with the probe, or which
/// the probe's complex does not contain.
inline std::vector<CellId> trivialization_mismatches(const ProbeAssignment& probe, const Chart& chart) {
    std::vector<CellId> out;
    for (const auto& [x, value] : chart.section) {
        if (!probe.complex().contains(x) || probe.at(x) != value) out.push_back(x);
    }
    return out;
}

/// Finite reading of pi^-1(U) = U x F: pairing a cell with its descriptor and
/// projecting returns the cell, and the chart's section matches the probe.
inline bool local_trivialization_check(const ProbeAssignment& probe, const Chart& chart) {
    return trivialization_mismatches(probe, chart).empty();
}

inline std::string describe(const GaugeViolation& v) {
    std::ostringstream os;
    os << to_string(v.identity) << " charts=";
    for (std::size_t i = 0; i < v.charts.size(); ++i) os << (i ? "," : "") << v.charts[i];
    os << " cell=" << v.cell << " residual=" << text::join_doubles(v.residual, ';')
       << " norm=" << text::format_double(v.residual_norm);
    return os.str();
}

} // namespace deschom

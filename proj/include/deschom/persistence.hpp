#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "deschom/bundle.hpp"
#include "deschom/descriptive.hpp"
#include "deschom/error.hpp"
#include "deschom/homology.hpp"
#include "deschom/text.hpp"

namespace deschom {

struct ScenarioStep {
    double theta;
    ProbeAssignment probe;
};

/// A fixed base complex whose descriptors are reassigned at each parameter
/// value. Cells persist across steps; only their descriptions change.
struct Scenario {
    std::shared_ptr<const CellComplex> base;
    std::vector<ScenarioStep> steps;
};

inline Scenario build_scenario(std::shared_ptr<const CellComplex> base,
                               const std::vector<std::pair<double, DescriptorTable>>& steps) {
    if (!base) throw Error(ErrorCode::InvalidArgument, "scenario needs a complex");
    Scenario s{base, {}};
    for (const auto& [theta, table] : steps) {
        if (!std::isfinite(theta)) throw Error(ErrorCode::NonFinite, "theta must be finite");
        if (!s.steps.empty() && !(theta > s.steps.back().theta))
            throw Error(ErrorCode::NonMonotoneTheta, "theta " + text::format_double(theta) + " does not exceed " +
                                                         text::format_double(s.steps.back().theta));
        auto probe = assign_probe(base, table);
        if (!s.steps.empty() && probe.arity() != s.steps.front().probe.arity())
            throw Error(ErrorCode::ArityMismatch, "step at theta " + text::format_double(theta) + " changes arity");
        s.steps.push_back({theta, std::move(probe)});
    }
    return s;
}

inline Scenario build_scenario(const CellComplex& base, const std::vector<std::pair<double, DescriptorTable>>& steps) {
    return build_scenario(std::make_shared<const CellComplex>(base), steps);
}

/// Betti number in dimension `betti_dim` of the descriptive subcomplex at
/// every step. `removal_dim` is the dimension whose cells the ball tests.
inline std::vector<std::pair<double, std::size_t>> betti_curve(const Scenario& s, const DescriptorBall& ball,
                                                              int betti_dim, SubcomplexMode mode, int removal_dim = 2) {
    if (betti_dim < 0) throw Error(ErrorCode::InvalidArgument, "betti dimension must be non-negative");
    std::vector<std::pair<double, std::size_t>> curve;
    for (const auto& step : s.steps) {
        auto h = descriptive_homology(step.probe, ball, removal_dim, mode, betti_dim);
        curve.emplace_back(step.theta, h.dims.at(static_cast<std::size_t>(betti_dim)).betti);
    }
    return curve;
}

struct SignatureRow {
    std::size_t step;
    double theta;
    Descriptor alpha;
    int dim;
    std::size_t betti;

    friend bool operator==(const SignatureRow&, const SignatureRow&) = default;
};

struct PersistenceSignature {
    double delta = 0.0;
    SubcomplexMode mode = SubcomplexMode::Remove;
    int max_dim = 0;
    int removal_dim = 2;
    std::size_t steps = 0;
    std::vector<SignatureRow> rows;

    friend bool operator==(const PersistenceSignature&, const PersistenceSignature&) = default;
};

/// Descriptive Betti numbers over every step, every alpha in the union of the
/// step spectra, and every dimension up to max_dim. Rows are ordered by step,
/// then alpha, then dimension.
inline PersistenceSignature signature(const Scenario& s, double delta, SubcomplexMode mode, int max_dim,
                                      int removal_dim = 2) {
    if (max_dim < 0) throw Error(ErrorCode::InvalidArgument, "max dimension must be non-negative");
    PersistenceSignature sig{delta, mode, max_dim, removal_dim, s.steps.size(), {}};
    std::set<Descriptor> alphas;
    for (const auto& step : s.steps)
        for (auto& a : alpha_spectrum(step.probe, removal_dim)) alphas.insert(std::move(a));
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        const auto& step = s.steps[i];
        for (const auto& alpha : alphas) {
            auto h = descriptive_homology(step.probe, DescriptorBall(alpha, delta), removal_dim, mode, max_dim);
            for (const auto& d : h.dims) sig.rows.push_back({i, step.theta, alpha, d.dim, d.betti});
        }
    }
    return sig;
}

struct TraceEntry {
    double theta;
    std::map<CellId, Descriptor> translation;
};

struct TransitionTrace {
    std::string chart_i = "i";
    std::string chart_j = "j";
    std::set<CellId> overlap;
    std::vector<TraceEntry> entries;
};

/// Transition values across the overlap of two regions at every step. Each
/// region is trivialized by its region descriptor, so the translation is the
/// difference of the two regions' descriptions.
inline TransitionTrace transition_evolution(const Scenario& s, const std::set<CellId>& cells_i,
                                            const std::set<CellId>& cells_j) {
    TransitionTrace trace;
    for (const auto& c : cells_i)
        if (cells_j.contains(c)) trace.overlap.insert(c);
    if (trace.overlap.empty()) throw Error(ErrorCode::EmptyOverlap, "regions share no cells");
    for (const auto& step : s.steps) {
        auto ci = make_region_chart(step.probe, cells_i, trace.chart_i);
        auto cj = make_region_chart(step.probe, cells_j, trace.chart_j);
        trace.entries.push_back({step.theta, transition(ci, cj).values});
    }
    return trace;
}

/// L1 distance over (step, alpha, dim) keys; a key missing from one side
/// counts as Betti number zero there.
inline double compare_signatures(const PersistenceSignature& a, const PersistenceSignature& b) {
    if (a.delta != b.delta || a.mode != b.mode || a.max_dim != b.max_dim || a.removal_dim != b.removal_dim)
        throw Error(ErrorCode::MetadataMismatch, "signatures were built with different parameters");
    if (a.steps != b.steps) throw Error(ErrorCode::StepCountMismatch, "signatures cover different step counts");
    using Key = std::tuple<std::size_t, Descriptor, int>;
    std::map<Key, std::pair<double, double>> table;
    for (const auto& r : a.rows) table[{r.step, r.alpha, r.dim}].first = static_cast<double>(r.betti);
    for (const auto& r : b.rows) table[{r.step, r.alpha, r.dim}].second = static_cast<double>(r.betti);
    double d = 0.0;
    for (const auto& [key, v] : table) d += std::abs(v.first - v.second);
    return d;
}

/// Writes one `theta,betti` CSV per (alpha, dim) curve into `dir`, named
/// curve_<alpha index>_dim<dim>.csv with alphas indexed in signature order.
/// Returns the written paths.
inline std::vector<std::filesystem::path> export_curves(const PersistenceSignature& sig,
                                                        const std::filesystem::path& dir) {
    std::map<std::pair<Descriptor, int>, std::vector<const SignatureRow*>> curves;
    std::map<Descriptor, std::size_t> alpha_index;
    for (const auto& r : sig.rows) {
        alpha_index.emplace(r.alpha, 0);
        curves[{r.alpha, r.dim}].push_back(&r);
    }
    std::size_t n = 0;
    for (auto& [alpha, idx] : alpha_index) idx = n++;
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& [key, rows] : curves) {
        auto path = dir / ("curve_" + std::to_string(alpha_index.at(key.first)) + "_dim" + std::to_string(key.second) + ".csv");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
        out << "# alpha=" << text::join_doubles(key.first, ';') << " dim=" << key.second << '\n';
        out << "theta,betti\n";
        for (const auto* r : rows) out << text::format_double(r->theta) << ',' << r->betti << '\n';
        written.push_back(path);
    }
    return written;
}

} // namespace deschom

#pragma once

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 success (and a clean report for validate/gauge),
// 1 validation or semantic failure, 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deschom/bundle.hpp"
#include "deschom/cell_complex.hpp"
#include "deschom/descriptive.hpp"
#include "deschom/formats.hpp"
#include "deschom/homology.hpp"
#include "deschom/oracle.hpp"
#include "deschom/persistence.hpp"
#include "deschom/text.hpp"

namespace deschom::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// The CLI enumerates up to this many cells when --oracle is given.
inline constexpr std::size_t kCliOracleBound = 24;

namespace detail {

inline void print_diagnostics(std::ostream& err, const std::vector<Diagnostic>& diags, bool warnings = true) {
    for (const auto& d : diags)
        if (warnings || d.severity == Severity::Error) err << d.str() << '\n';
}

/// Reads and parses a complex; nullopt means the caller should exit 2.
inline std::optional<CellComplex> load_complex(const std::string& path, std::ostream& err, bool warnings = true) {
    auto body = read_file(path);
    if (!body) {
        err << path << ": error: cannot read file\n";
        return std::nullopt;
    }
    auto parsed = parse_complex(*body, path);
    print_diagnostics(err, parsed.diagnostics, warnings);
    return std::move(parsed.value);
}

/// Loads a descriptor table for `k`; returns the exit code on failure.
inline std::optional<ProbeAssignment> load_probe(const std::string& path, const std::shared_ptr<const CellComplex>& k,
                                                 std::ostream& err, int& code) {
    auto body = read_file(path);
    if (!body) {
        err << path << ": error: cannot read file\n";
        code = kUsage;
        return std::nullopt;
    }
    auto table = parse_descriptors(*body, k.get(), path);
    print_diagnostics(err, table.diagnostics);
    if (!table.ok()) {
        code = kFailure;
        return std::nullopt;
    }
    try {
        return assign_probe(k, *table.value);
    } catch (const Error& e) {
        err << path << ": error: " << e.what() << '\n';
        code = kFailure;
        return std::nullopt;
    }
}

inline bool same_ranks(const HomologyResult& a, const HomologyResult& b) {
    if (a.dims.size() != b.dims.size()) return false;
    for (std::size_t i = 0; i < a.dims.size(); ++i)
        if (a.dims[i].cycle_rank != b.dims[i].cycle_rank || a.dims[i].boundary_rank != b.dims[i].boundary_rank ||
            a.dims[i].betti != b.dims[i].betti)
            return false;
    return true;
}

} // namespace detail

inline int cmd_validate(const std::string& complex_path, std::ostream& out, std::ostream& err) {
    auto k = detail::load_complex(complex_path, err, false);
    if (!k) return kUsage;
    const auto report = validate(*k);
    for (const auto& w : report.warnings) err << "warning " << w.describe() << '\n';
    if (report.valid()) {
        out << "OK\n";
        return kOk;
    }
    for (const auto& v : report.violations) out << "violation " << v.describe() << '\n';
    return kFailure;
}

inline int cmd_homology(const std::string& complex_path, std::optional<int> max_dim, bool generators, bool oracle,
                        std::ostream& out, std::ostream& err) {
    auto k = detail::load_complex(complex_path, err, false);
    if (!k) return kUsage;
    if (max_dim && *max_dim < 0) {
        err << "error: --max-dim must be non-negative\n";
        return kUsage;
    }
    if (auto report = validate(*k); !report.valid()) {
        for (const auto& v : report.violations) err << "violation " << v.describe() << '\n';
        return kFailure;
    }
    const auto h = homology(*k, max_dim);
    write_homology(out, h, generators);
    if (!oracle) return kOk;
    try {
        auto o = oracle_homology(*k, kCliOracleBound);
        if (max_dim) {
            // Pad or trim the oracle to the requested range.
            while (static_cast<int>(o.dims.size()) > *max_dim + 1) o.dims.pop_back();
            while (static_cast<int>(o.dims.size()) < *max_dim + 1) {
                DimensionHomology d;
                d.dim = static_cast<int>(o.dims.size());
                o.dims.push_back(d);
            }
        }
        if (!detail::same_ranks(h, o)) {
            err << "error: oracle disagrees with reduction\n" << format_homology(o);
            return kFailure;
        }
        out << "oracle agrees\n";
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}

struct DescriptiveOptions {
    std::string probe_path;
    std::optional<std::string> alpha;
    double delta = 0.0;
    int dim = 2;
    std::string mode = "remove";
    bool spectrum = false;
};

inline int cmd_descriptive(const std::string& complex_path, const DescriptiveOptions& opt, std::ostream& out,
                           std::ostream& err) {
    const auto mode = parse_mode(opt.mode);
    if (!mode) {
        err << "error: --mode must be 'remove' or 'retain'\n";
        return kUsage;
    }
    if (!opt.alpha && !opt.spectrum) {
        err << "error: give --alpha or --spectrum\n";
        return kUsage;
    }
    if (!(opt.delta >= 0.0) || opt.dim < 0) {
        err << "error: --delta and --dim must be non-negative\n";
        return kUsage;
    }
    auto parsed = detail::load_complex(complex_path, err);
    if (!parsed) return kUsage;
    auto k = std::make_shared<const CellComplex>(std::move(*parsed));
    if (!validate(*k).valid()) {
        err << "error: complex is not valid\n";
        return kFailure;
    }
    int code = kOk;
    auto probe = detail::load_probe(opt.probe_path, k, err, code);
    if (!probe) return code;

    std::vector<Descriptor> alphas;
    if (opt.spectrum) {
        alphas = alpha_spectrum(*probe, opt.dim);
    } else {
        auto a = text::parse_doubles(*opt.alpha, ';');
        if (!a || a->size() != probe->arity()) {
            err << "error: --alpha must be " << probe->arity() << " semicolon-joined numbers\n";
            return kUsage;
        }
        alphas.push_back(std::move(*a));
    }
    for (const auto& alpha : alphas) {
        const auto sub = derive_subcomplex(*probe, DescriptorBall(alpha, opt.delta), opt.dim, *mode);
        const auto h = homology(sub.result, std::max(k->max_dim(), 0));
        out << "alpha " << text::join_doubles(alpha, ';') << '\n';
        out << "cells " << sub.result.size() << '\n';
        out << "betti";
        for (auto b : h.betti()) out << ' ' << b;
        out << '\n';
    }
    return kOk;
}

inline int cmd_gauge(const std::string& complex_path, const std::string& probe_path, const std::string& charts_path,
                     double tolerance, std::ostream& out, std::ostream& err) {
    if (!(tolerance >= 0.0)) {
        err << "error: --tolerance must be non-negative\n";
        return kUsage;
    }
    auto parsed = detail::load_complex(complex_path, err);
    if (!parsed) return kUsage;
    auto k = std::make_shared<const CellComplex>(std::move(*parsed));
    int code = kOk;
    auto probe = detail::load_probe(probe_path, k, err, code);
    if (!probe) return code;
    auto body = read_file(charts_path);
    if (!body) {
        err << charts_path << ": error: cannot read file\n";
        return kUsage;
    }
    auto specs = parse_charts(*body, charts_path);
    detail::print_diagnostics(err, specs.diagnostics);
    if (!specs.ok()) return kUsage;

    std::vector<Chart> charts;
    GaugeReport report;
    try {
        charts = build_charts(*probe, *specs.value);
        report = verify_cocycle(charts, tolerance);
    } catch (const Error& e) {
        err << charts_path << ": error: " << e.what() << '\n';
        return kFailure;
    }
    std::size_t lines = 0;
    for (const auto* list : {&report.reflexivity, &report.symmetry, &report.cocycle})
        for (const auto& v : *list) {
            out << describe(v) << '\n';
            ++lines;
        }
    for (const auto& chart : charts)
        for (const auto& cell : trivialization_mismatches(*probe, chart)) {
            const auto& local = chart.section.at(cell);
            Descriptor residual(local.size());
            for (std::size_t i = 0; i < local.size(); ++i) residual[i] = local[i] - probe->at(cell)[i];
            double norm = 0.0;
            for (double x : residual) norm += x * x;
            norm = std::sqrt(norm);
            if (norm <= tolerance) continue;
            out << "trivialization charts=" << chart.id << " cell=" << cell
                << " residual=" << text::join_doubles(residual, ';') << " norm=" << text::format_double(norm) << '\n';
            ++lines;
        }
    if (lines == 0) {
        out << "OK\n";
        return kOk;
    }
    return kFailure;
}

struct PersistOptions {
    double delta = 0.0;
    std::string mode = "remove";
    int max_dim = 2;
    std::optional<std::string> out_path;
};

inline int cmd_persist(const std::string& scenario_path, const PersistOptions& opt, std::ostream& out,
                       std::ostream& err) {
    const auto mode = parse_mode(opt.mode);
    if (!mode) {
        err << "error: --mode must be 'remove' or 'retain'\n";
        return kUsage;
    }
    if (!(opt.delta >= 0.0) || opt.max_dim < 0) {
        err << "error: --delta and --max-dim must be non-negative\n";
        return kUsage;
    }
    auto scenario = load_scenario(scenario_path);
    detail::print_diagnostics(err, scenario.diagnostics);
    if (!scenario.ok()) return kFailure;
    PersistenceSignature sig;
    try {
        if (!validate(*scenario.value->base).valid()) {
            err << "error: scenario complex is not valid\n";
            return kFailure;
        }
        sig = signature(*scenario.value, opt.delta, *mode, opt.max_dim);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    const auto csv = emit_signature(sig);
    if (opt.out_path) {
        std::ofstream f(*opt.out_path, std::ios::binary);
        if (!f || !(f << csv)) {
            err << *opt.out_path << ": error: cannot write file\n";
            return kFailure;
        }
        out << "rows " << sig.rows.size() << '\n';
    } else {
        out << csv;
    }
    return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cellular and descriptive homology over Z/2", "deschom"};
    app.require_subcommand(1);

    std::string complex_path;
    std::optional<int> max_dim;
    bool generators = false;
    bool oracle = false;
    DescriptiveOptions dopt;
    std::string probe_path, charts_path;
    double tolerance = 0.0;
    std::string scenario_path;
    PersistOptions popt;

    auto* validate_cmd = app.add_subcommand("validate", "Check the structure of a complex");
    validate_cmd->add_option("complex", complex_path, "Complex file")->required();

    auto* homology_cmd = app.add_subcommand("homology", "Betti numbers and cycle ranks");
    homology_cmd->add_option("complex", complex_path, "Complex file")->required();
    homology_cmd->add_option("--max-dim", max_dim, "Highest dimension to report");
    homology_cmd->add_flag("--generators", generators, "List generator cycles");
    homology_cmd->add_flag("--oracle", oracle, "Cross-check against exhaustive enumeration");

    auto* desc_cmd = app.add_subcommand("descriptive", "Homology of descriptor-ball subcomplexes");
    desc_cmd->add_option("complex", complex_path, "Complex file")->required();
    desc_cmd->add_option("--probe", dopt.probe_path, "Descriptor CSV")->required();
    desc_cmd->add_option("--alpha", dopt.alpha, "Ball center, semicolon-joined");
    desc_cmd->add_option("--delta", dopt.delta, "Ball radius");
    desc_cmd->add_option("--dim", dopt.dim, "Dimension of the tested cells");
    desc_cmd->add_option("--mode", dopt.mode, "remove or retain");
    desc_cmd->add_flag("--spectrum", dopt.spectrum, "Use every descriptor value of the tested cells");

    auto* gauge_cmd = app.add_subcommand("gauge", "Check transition-function identities of a chart cover");
    gauge_cmd->add_option("complex", complex_path, "Complex file")->required();
    gauge_cmd->add_option("--probe", probe_path, "Descriptor CSV")->required();
    gauge_cmd->add_option("--charts", charts_path, "Chart file")->required();
    gauge_cmd->add_option("--tolerance", tolerance, "Residual tolerance");

    auto* persist_cmd = app.add_subcommand("persist", "Persistence signature of a scenario");
    persist_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
    persist_cmd->add_option("--delta", popt.delta, "Ball radius");
    persist_cmd->add_option("--mode", popt.mode, "remove or retain");
    persist_cmd->add_option("--max-dim", popt.max_dim, "Highest Betti dimension");
    persist_cmd->add_option("--out", popt.out_path, "Output CSV (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(complex_path, out, err);
        if (*homology_cmd) return cmd_homology(complex_path, max_dim, generators, oracle, out, err);
        if (*desc_cmd) return cmd_descriptive(complex_path, dopt, out, err);
        if (*gauge_cmd) return cmd_gauge(complex_path, probe_path, charts_path, tolerance, out, err);
        if (*persist_cmd) return cmd_persist(scenario_path, popt, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

} // namespace deschom::cli

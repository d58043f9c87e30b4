#pragma once

// Line-oriented text formats: complexes, descriptor tables, chart covers,
// scenarios and persistence signatures. Parsers collect diagnostics rather
// than throwing; emitters produce canonical, byte-stable text.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "deschom/bundle.hpp"
#include "deschom/cell_complex.hpp"
#include "deschom/descriptive.hpp"
#include "deschom/persistence.hpp"
#include "deschom/text.hpp"

namespace deschom {

enum class Severity { Error, Warning };

struct Diagnostic {
    std::string file;
    std::size_t line = 0; // 0 when not tied to a line
    Severity severity = Severity::Error;
    std::string message;

    std::string str() const {
        std::string s = file;
        if (line) s += ":" + std::to_string(line);
        s += severity == Severity::Error ? ": error: " : ": warning: ";
        return s + message;
    }
};

/// On error `value` is empty; warnings may accompany a value.
template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept { return value.has_value(); }

    bool has_errors() const {
        return std::any_of(diagnostics.begin(), diagnostics.end(),
                           [](const Diagnostic& d) { return d.severity == Severity::Error; });
    }
};

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline std::string_view strip_comment(std::string_view line) {
    if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
    return text::trim(line);
}

inline bool valid_cell_id(std::string_view id) {
    return !id.empty() && id.find_first_of(":,;# \t") == std::string_view::npos;
}

} // namespace detail

// ---------------------------------------------------------------- complexes

inline ParseResult<CellComplex> parse_complex(std::string_view input, const std::string& file = "<complex>") {
    ParseResult<CellComplex> out;
    auto error = [&](std::size_t line, std::string msg) {
        out.diagnostics.push_back({file, line, Severity::Error, std::move(msg)});
    };
    struct BndLine {
        std::size_t line;
        std::vector<std::string_view> tokens;
    };
    const auto all = text::lines(input);
    std::map<CellId, int> dims;
    std::vector<BndLine> bnds;

    for (std::size_t n = 0; n < all.size(); ++n) {
        const std::size_t lineno = n + 1;
        auto tokens = text::split_ws(detail::strip_comment(all[n]));
        if (tokens.empty()) continue;
        if (tokens[0] == "cell") {
            if (tokens.size() != 3) {
                error(lineno, "expected 'cell <id> <dim>'");
                continue;
            }
            auto dim = text::parse_int(tokens[2]);
            if (!detail::valid_cell_id(tokens[1])) {
                error(lineno, "invalid cell id '" + std::string(tokens[1]) + "'");
            } else if (!dim || *dim < 0) {
                error(lineno, "invalid dimension '" + std::string(tokens[2]) + "'");
            } else if (!dims.emplace(std::string(tokens[1]), static_cast<int>(*dim)).second) {
                error(lineno, "duplicate cell '" + std::string(tokens[1]) + "'");
            }
        } else if (tokens[0] == "bnd") {
            if (tokens.size() < 2) {
                error(lineno, "expected 'bnd <id> <face>:<degree> ...'");
                continue;
            }
            bnds.push_back({lineno, std::move(tokens)});
        } else {
            error(lineno, "unknown directive '" + std::string(tokens[0]) + "'");
        }
    }

    std::map<CellId, std::map<CellId, Degree>> boundaries;
    for (const auto& b : bnds) {
        const std::string id(b.tokens[1]);
        auto it = dims.find(id);
        if (it == dims.end()) {
            error(b.line, "boundary for undeclared cell '" + id + "'");
            continue;
        }
        auto& faces = boundaries[id];
        for (std::size_t t = 2; t < b.tokens.size(); ++t) {
            const auto tok = b.tokens[t];
            const auto colon = tok.rfind(':');
            if (colon == std::string_view::npos) {
                error(b.line, "expected <face>:<degree>, got '" + std::string(tok) + "'");
                continue;
            }
            const std::string face(tok.substr(0, colon));
            auto degree = text::parse_int(tok.substr(colon + 1));
            if (!degree) {
                error(b.line, "invalid degree in '" + std::string(tok) + "'");
                continue;
            }
            auto f = dims.find(face);
            if (f == dims.end()) {
                error(b.line, "face '" + face + "' of '" + id + "' is not declared");
                continue;
            }
            if (f->second != it->second - 1) {
                error(b.line, "face '" + face + "' has dimension " + std::to_string(f->second) + ", expected " +
                                  std::to_string(it->second - 1));
                continue;
            }
            faces[face] += *degree;
        }
    }
    if (out.has_errors()) return out;

    CellComplex k = CellComplex::from_tables(dims, boundaries);
    for (const auto& v : validate(k).violations)
        out.diagnostics.push_back({file, 0, Severity::Warning, "invalid complex: " + v.describe()});
    out.value = std::move(k);
    return out;
}

/// Canonical text: cells by (dimension, id), then one bnd line per cell with a
/// non-empty boundary, faces by id.
inline std::string emit_complex(const CellComplex& k) {
    std::string out;
    const auto cells = k.cells();
    for (const auto& id : cells) out += "cell " + id + " " + std::to_string(k.dimension(id)) + "\n";
    for (const auto& id : cells) {
        const auto& b = k.boundary(id);
        if (b.empty()) continue;
        out += "bnd " + id;
        for (const auto& [face, degree] : b) out += " " + face + ":" + std::to_string(degree);
        out += "\n";
    }
    return out;
}

// ------------------------------------------------------------- descriptors

/// Parses `cell,f1,...,fn` CSV. When `complex` is given, unknown cells are
/// errors and every cell of it must be covered.
inline ParseResult<DescriptorTable> parse_descriptors(std::string_view csv, const CellComplex* complex,
                                                      const std::string& file = "<descriptors>") {
    ParseResult<DescriptorTable> out;
    auto error = [&](std::size_t line, std::string msg) {
        out.diagnostics.push_back({file, line, Severity::Error, std::move(msg)});
    };
    const auto all = text::lines(csv);
    std::size_t n = 0;
    while (n < all.size() && detail::strip_comment(all[n]).empty()) ++n;
    if (n == all.size()) {
        error(0, "missing header 'cell,f1,...,fn'");
        return out;
    }
    const auto header = text::split(text::trim(all[n]), ',');
    if (text::trim(header[0]) != "cell") {
        error(n + 1, "header must start with 'cell'");
        return out;
    }
    const std::size_t arity = header.size() - 1;
    DescriptorTable table;
    std::set<CellId> seen;
    for (++n; n < all.size(); ++n) {
        const std::size_t lineno = n + 1;
        const auto line = detail::strip_comment(all[n]);
        if (line.empty()) continue;
        const auto fields = text::split(line, ',');
        if (fields.size() != arity + 1) {
            error(lineno, "expected " + std::to_string(arity + 1) + " fields, got " + std::to_string(fields.size()));
            continue;
        }
        const std::string id(text::trim(fields[0]));
        if (complex && !complex->contains(id)) {
            error(lineno, "unknown cell '" + id + "'");
            continue;
        }
        if (!seen.insert(id).second) {
            error(lineno, "duplicate row for cell '" + id + "'");
            continue;
        }
        Descriptor d;
        bool good = true;
        for (std::size_t f = 1; f < fields.size(); ++f) {
            auto x = text::parse_double(text::trim(fields[f]));
            if (!x || !std::isfinite(*x)) {
                error(lineno, "non-numeric value '" + std::string(text::trim(fields[f])) + "'");
                good = false;
                break;
            }
            d.push_back(*x);
        }
        if (good) table.emplace_back(id, std::move(d));
    }
    if (complex) {
        std::string missing;
        for (const auto& id : complex->cells())
            if (!seen.contains(id)) missing += (missing.empty() ? "" : " ") + id;
        if (!missing.empty()) error(0, "missing cells: " + missing);
    }
    if (!out.has_errors()) out.value = std::move(table);
    return out;
}

inline ParseResult<DescriptorTable> parse_descriptors(std::string_view csv, const CellComplex& complex,
                                                      const std::string& file = "<descriptors>") {
    return parse_descriptors(csv, &complex, file);
}

/// Rows sorted by cell id.
inline std::string emit_descriptors(const DescriptorTable& table) {
    auto rows = table;
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t arity = rows.empty() ? 0 : rows.front().second.size();
    std::string out = "cell";
    for (std::size_t i = 1; i <= arity; ++i) out += ",f" + std::to_string(i);
    out += "\n";
    for (const auto& [id, d] : rows) {
        out += id;
        for (double x : d) out += "," + text::format_double(x);
        out += "\n";
    }
    return out;
}

inline std::string emit_descriptors(const ProbeAssignment& probe) {
    DescriptorTable t(probe.values().begin(), probe.values().end());
    return emit_descriptors(t);
}

// ------------------------------------------------------------------ charts

struct ChartSpec {
    std::string id;
    std::set<CellId> members;
    std::map<CellId, Descriptor> overrides;

    friend bool operator==(const ChartSpec&, const ChartSpec&) = default;
};

inline ParseResult<std::vector<ChartSpec>> parse_charts(std::string_view input, const std::string& file = "<charts>") {
    ParseResult<std::vector<ChartSpec>> out;
    auto error = [&](std::size_t line, std::string msg) {
        out.diagnostics.push_back({file, line, Severity::Error, std::move(msg)});
    };
    std::vector<ChartSpec> specs;
    std::set<std::string> ids;
    const auto all = text::lines(input);
    for (std::size_t n = 0; n < all.size(); ++n) {
        const std::size_t lineno = n + 1;
        auto tokens = text::split_ws(detail::strip_comment(all[n]));
        if (tokens.empty()) continue;
        if (tokens[0] == "chart") {
            if (tokens.size() != 2) {
                error(lineno, "expected 'chart <id>'");
                continue;
            }
            if (!ids.insert(std::string(tokens[1])).second) error(lineno, "duplicate chart '" + std::string(tokens[1]) + "'");
            specs.push_back({std::string(tokens[1]), {}, {}});
            continue;
        }
        if (specs.empty()) {
            error(lineno, "'" + std::string(tokens[0]) + "' before any 'chart' line");
            continue;
        }
        auto& spec = specs.back();
        if (tokens[0] == "member") {
            if (tokens.size() != 2) {
                error(lineno, "expected 'member <cell>'");
                continue;
            }
            spec.members.insert(std::string(tokens[1]));
        } else if (tokens[0] == "override") {
            if (tokens.size() < 2) {
                error(lineno, "expected 'override <cell> <f1> ... <fn>'");
                continue;
            }
            Descriptor d;
            bool good = true;
            for (std::size_t t = 2; t < tokens.size(); ++t) {
                auto x = text::parse_double(tokens[t]);
                if (!x || !std::isfinite(*x)) {
                    error(lineno, "non-numeric value '" + std::string(tokens[t]) + "'");
                    good = false;
                    break;
                }
                d.push_back(*x);
            }
            if (good && !spec.overrides.emplace(std::string(tokens[1]), std::move(d)).second)
                error(lineno, "duplicate override for '" + std::string(tokens[1]) + "'");
        } else {
            error(lineno, "unknown directive '" + std::string(tokens[0]) + "'");
        }
    }
    if (!out.has_errors()) out.value = std::move(specs);
    return out;
}

inline std::string emit_charts(const std::vector<ChartSpec>& specs) {
    std::string out;
    for (const auto& s : specs) {
        out += "chart " + s.id + "\n";
        for (const auto& m : s.members) out += "member " + m + "\n";
        for (const auto& [cell, d] : s.overrides) {
            out += "override " + cell;
            for (double x : d) out += " " + text::format_double(x);
            out += "\n";
        }
    }
    return out;
}

/// Restricts the probe to each spec's members, then applies its overrides.
inline std::vector<Chart> build_charts(const ProbeAssignment& probe, const std::vector<ChartSpec>& specs) {
    std::vector<Chart> charts;
    for (const auto& s : specs) {
        auto chart = make_chart(probe, s.members, s.id);
        for (const auto& [cell, d] : s.overrides) {
            auto it = chart.section.find(cell);
            if (it == chart.section.end())
                throw Error(ErrorCode::ForeignCell, "override for '" + cell + "' outside chart '" + s.id + "'");
            if (d.size() != probe.arity())
                throw Error(ErrorCode::ArityMismatch, "override for '" + cell + "' in chart '" + s.id + "' has wrong arity");
            it->second = d;
        }
        charts.push_back(std::move(chart));
    }
    return charts;
}

// --------------------------------------------------------------- scenarios

struct ScenarioFile {
    std::string complex_path;
    std::vector<std::pair<double, std::string>> steps;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

inline ParseResult<ScenarioFile> parse_scenario_file(std::string_view input, const std::string& file = "<scenario>") {
    ParseResult<ScenarioFile> out;
    auto error = [&](std::size_t line, std::string msg) {
        out.diagnostics.push_back({file, line, Severity::Error, std::move(msg)});
    };
    ScenarioFile sf;
    bool have_complex = false;
    const auto all = text::lines(input);
    for (std::size_t n = 0; n < all.size(); ++n) {
        const std::size_t lineno = n + 1;
        auto tokens = text::split_ws(detail::strip_comment(all[n]));
        if (tokens.empty()) continue;
        if (tokens[0] == "complex") {
            if (tokens.size() != 2) error(lineno, "expected 'complex <path>'");
            else if (have_complex) error(lineno, "duplicate 'complex' line");
            else {
                sf.complex_path = std::string(tokens[1]);
                have_complex = true;
            }
        } else if (tokens[0] == "step") {
            auto theta = tokens.size() == 3 ? text::parse_double(tokens[1]) : std::nullopt;
            if (!theta || !std::isfinite(*theta)) error(lineno, "expected 'step <theta> <descriptor-csv-path>'");
            else sf.steps.emplace_back(*theta, std::string(tokens[2]));
        } else {
            error(lineno, "unknown directive '" + std::string(tokens[0]) + "'");
        }
    }
    if (!have_complex) error(0, "missing 'complex <path>' line");
    if (!out.has_errors()) out.value = std::move(sf);
    return out;
}

inline std::string emit_scenario_file(const ScenarioFile& sf) {
    std::string out = "complex " + sf.complex_path + "\n";
    for (const auto& [theta, path] : sf.steps) out += "step " + text::format_double(theta) + " " + path + "\n";
    return out;
}

/// Loads a scenario file and everything it references. Relative paths
/// resolve against the scenario file's directory.
inline ParseResult<Scenario> load_scenario(const std::filesystem::path& path) {
    ParseResult<Scenario> out;
    const std::string file = path.string();
    auto fail = [&](std::string f, std::size_t line, std::string msg) {
        out.diagnostics.push_back({std::move(f), line, Severity::Error, std::move(msg)});
        return out;
    };
    auto body = read_file(path);
    if (!body) return fail(file, 0, "cannot read file");
    auto sf = parse_scenario_file(*body, file);
    out.diagnostics = sf.diagnostics;
    if (!sf.ok()) return out;

    const auto dir = path.parent_path();
    auto resolve = [&](const std::string& p) {
        std::filesystem::path q(p);
        return q.is_absolute() ? q : dir / q;
    };
    const auto cpath = resolve(sf.value->complex_path);
    auto ctext = read_file(cpath);
    if (!ctext) return fail(cpath.string(), 0, "cannot read complex file");
    auto complex = parse_complex(*ctext, cpath.string());
    out.diagnostics.insert(out.diagnostics.end(), complex.diagnostics.begin(), complex.diagnostics.end());
    if (!complex.ok()) return out;
    auto base = std::make_shared<const CellComplex>(std::move(*complex.value));

    std::vector<std::pair<double, DescriptorTable>> steps;
    for (const auto& [theta, dpath] : sf.value->steps) {
        const auto p = resolve(dpath);
        auto dtext = read_file(p);
        if (!dtext) return fail(p.string(), 0, "cannot read descriptor file");
        auto table = parse_descriptors(*dtext, *base, p.string());
        out.diagnostics.insert(out.diagnostics.end(), table.diagnostics.begin(), table.diagnostics.end());
        if (!table.ok()) return out;
        steps.emplace_back(theta, std::move(*table.value));
    }
    try {
        out.value = build_scenario(base, steps);
    } catch (const Error& e) {
        return fail(file, 0, e.what());
    }
    return out;
}

// -------------------------------------------------------------- signatures

/// CSV `theta,alpha,dim,betti` preceded by a metadata comment line.
inline std::string emit_signature(const PersistenceSignature& sig) {
    std::string out = "# delta=" + text::format_double(sig.delta) + " mode=" + std::string(to_string(sig.mode)) +
                      " max_dim=" + std::to_string(sig.max_dim) + " removal_dim=" + std::to_string(sig.removal_dim) +
                      " steps=" + std::to_string(sig.steps) + "\n";
    out += "theta,alpha,dim,betti\n";
    for (const auto& r : sig.rows)
        out += text::format_double(r.theta) + "," + text::join_doubles(r.alpha, ';') + "," + std::to_string(r.dim) +
               "," + std::to_string(r.betti) + "\n";
    return out;
}

inline ParseResult<PersistenceSignature> parse_signature(std::string_view csv, const std::string& file = "<signature>") {
    ParseResult<PersistenceSignature> out;
    auto error = [&](std::size_t line, std::string msg) {
        out.diagnostics.push_back({file, line, Severity::Error, std::move(msg)});
    };
    PersistenceSignature sig;
    bool header = false;
    bool have_steps = false;
    std::vector<double> thetas;
    const auto all = text::lines(csv);
    for (std::size_t n = 0; n < all.size(); ++n) {
        const std::size_t lineno = n + 1;
        auto line = text::trim(all[n]);
        if (line.empty()) continue;
        if (line.front() == '#') {
            for (auto tok : text::split_ws(line.substr(1))) {
                auto eq = tok.find('=');
                if (eq == std::string_view::npos) continue;
                auto key = tok.substr(0, eq);
                auto val = tok.substr(eq + 1);
                bool good = true;
                if (key == "delta") {
                    auto x = text::parse_double(val);
                    good = x.has_value();
                    if (good) sig.delta = *x;
                } else if (key == "mode") {
                    auto m = parse_mode(val);
                    good = m.has_value();
                    if (good) sig.mode = *m;
                } else if (key == "max_dim" || key == "removal_dim" || key == "steps") {
                    auto x = text::parse_int(val);
                    good = x && *x >= 0;
                    if (!good) {
                    } else if (key == "max_dim") sig.max_dim = static_cast<int>(*x);
                    else if (key == "removal_dim") sig.removal_dim = static_cast<int>(*x);
                    else {
                        sig.steps = static_cast<std::size_t>(*x);
                        have_steps = true;
                    }
                }
                if (!good) error(lineno, "invalid metadata '" + std::string(tok) + "'");
            }
            continue;
        }
        if (!header) {
            if (line != "theta,alpha,dim,betti") error(lineno, "expected header 'theta,alpha,dim,betti'");
            header = true;
            continue;
        }
        const auto f = text::split(line, ',');
        if (f.size() != 4) {
            error(lineno, "expected 4 fields");
            continue;
        }
        auto theta = text::parse_double(f[0]);
        auto alpha = text::parse_doubles(f[1], ';');
        auto dim = text::parse_int(f[2]);
        auto betti = text::parse_int(f[3]);
        if (!theta || !alpha || !dim || !betti || *dim < 0 || *betti < 0) {
            error(lineno, "malformed row");
            continue;
        }
        if (thetas.empty() || thetas.back() != *theta) {
            if (!thetas.empty() && !(*theta > thetas.back())) {
                error(lineno, "theta values must be non-decreasing");
                continue;
            }
            thetas.push_back(*theta);
        }
        sig.rows.push_back({thetas.size() - 1, *theta, std::move(*alpha), static_cast<int>(*dim),
                            static_cast<std::size_t>(*betti)});
    }
    if (!header) error(0, "missing header 'theta,alpha,dim,betti'");
    if (!have_steps) sig.steps = thetas.size();
    if (!out.has_errors()) out.value = std::move(sig);
    return out;
}

} // namespace deschom

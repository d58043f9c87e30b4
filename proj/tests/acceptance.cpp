// Acceptance suite: one PASS/FAIL line per criterion. Corpus sizes, seeds and
// time limits are fixed here; the exit status is non-zero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "deschom/cli.hpp"
#include "deschom/deschom.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace deschom;
using namespace deschom::testing;

namespace {

constexpr double kClassicalBudgetSeconds = 1.0;
constexpr int kBoundaryComplexes = 200;
constexpr int kChainsPerComplex = 50;
constexpr int kRecoveryComplexes = 50;
constexpr int kSubgroupTriples = 100;
constexpr int kCleanCovers = 100;
constexpr int kPerturbedCovers = 20;
constexpr std::size_t kMaxCharts = 6;
constexpr int kOracleComplexes = 500;
constexpr std::size_t kOracleMaxCells = 12;
constexpr double kOracleBudgetSeconds = 10.0;

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fs", s);
    return buf;
}

// The 200-complex corpus shared by criteria 2 and 3.
std::vector<CellComplex> simplicial_corpus() {
    Rng rng(1001);
    std::vector<CellComplex> out;
    for (int i = 0; i < kBoundaryComplexes; ++i) out.push_back(random_simplicial_complex(rng, 10, 3, i % 2 == 0));
    return out;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v.size()) - 1))];
}

DescriptorBall random_ball(Rng& rng, const ProbeAssignment& probe, int p) {
    const auto spectrum = alpha_spectrum(probe, p);
    const double radii[] = {0.0, 0.5, 1.0, 2.5, 6.0};
    return DescriptorBall(pick(rng, spectrum), radii[uniform_int(rng, 0, 4)]);
}

SubcomplexMode random_mode(Rng& rng) { return coin(rng) ? SubcomplexMode::Remove : SubcomplexMode::Retain; }

Verdict classical_suite() {
    Verdict v;
    const std::vector<std::pair<std::string, std::vector<std::size_t>>> cases{
        {"circle.cplx", {1, 1}}, {"interval.cplx", {1, 0}}, {"two_points.cplx", {2}},        {"wedge.cplx", {1, 2}},
        {"sphere.cplx", {1, 0, 1}}, {"torus.cplx", {1, 2, 1}}, {"disk3.cplx", {1, 0, 0}},
    };
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& [file, expected] : cases) {
        const auto k = load_complex(file);
        const auto engine = homology(k);
        const auto oracle = oracle_homology(k, k.size());
        if (engine.betti() != expected) v.fail(file + " engine Betti vector differs");
        if (oracle.betti() != expected) v.fail(file + " oracle Betti vector differs");
        for (std::size_t p = 0; p < engine.dims.size() && p < oracle.dims.size(); ++p)
            if (engine.dims[p].cycle_rank != oracle.dims[p].cycle_rank ||
                engine.dims[p].boundary_rank != oracle.dims[p].boundary_rank)
                v.fail(file + " ranks differ from oracle");
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= kClassicalBudgetSeconds) v.fail("runtime " + fmt_seconds(elapsed));
    if (v.pass) v.detail = "7 fixtures equal oracle, " + fmt_seconds(elapsed);
    return v;
}

Verdict boundary_squared(const std::vector<CellComplex>& corpus) {
    Verdict v;
    Rng rng(1002);
    std::size_t checks = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& k = corpus[i];
        if (!validate(k).valid()) v.fail("complex " + std::to_string(i) + " fails validate");
        for (int c = 0; c < kChainsPerComplex; ++c) {
            const int p = uniform_int(rng, 0, k.max_dim());
            const auto chain = random_chain(rng, k, p);
            const auto b = boundary_of(k, chain);
            if (p >= 1 && !boundary_of(k, b).empty()) v.fail("complex " + std::to_string(i) + " has nonzero boundary of boundary");
            ++checks;
        }
    }
    if (v.pass) v.detail = std::to_string(corpus.size()) + " complexes, " + std::to_string(checks) + " chains";
    return v;
}

Verdict exactness(const std::vector<CellComplex>& corpus) {
    Verdict v;
    Rng rng(1003);
    std::size_t checks = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto k = std::make_shared<const CellComplex>(corpus[i]);
        const auto probe = assign_probe(k, random_descriptors(rng, *k, 2, 4));
        const int p = uniform_int(rng, 0, k->max_dim());
        const auto sub = derive_subcomplex(probe, random_ball(rng, probe, p), p, random_mode(rng));
        for (int q = 1; q <= sub.result.max_dim(); ++q)
            for (int c = 0; c < 10; ++c) {
                const auto b = boundary_of(sub.result, random_chain(rng, sub.result, q));
                if (!boundary_of(sub.result, b).empty() || !is_boundary(sub.result, b))
                    v.fail("subcomplex of complex " + std::to_string(i) + " breaks img in ker");
                ++checks;
            }
    }
    if (v.pass) v.detail = std::to_string(checks) + " boundary chains of descriptive subcomplexes";
    return v;
}

Verdict recovery() {
    Verdict v;
    Rng rng(1004);
    for (int i = 0; i < kRecoveryComplexes; ++i) {
        const auto k = std::make_shared<const CellComplex>(i % 2 ? random_simplicial_complex(rng, 8, 3)
                                                                 : random_cw_complex(rng, 12));
        const auto probe = assign_probe(k, random_descriptors(rng, *k, 3, 5));
        const double delta = image_diameter(probe) + 0.5;
        const int top = k->max_dim();
        const auto base = homology(*k, top).betti();
        for (int p = 0; p <= top; ++p)
            for (const auto& alpha : alpha_spectrum(probe, p))
                if (descriptive_homology(probe, DescriptorBall(alpha, delta), p, SubcomplexMode::Retain, top).betti() != base)
                    v.fail("complex " + std::to_string(i) + " differs at removal dimension " + std::to_string(p));
    }
    if (v.pass) v.detail = std::to_string(kRecoveryComplexes) + " complexes match classical homology";
    return v;
}

Verdict hole_punching() {
    Verdict v;
    const auto probe = load_probe("disk3.cplx", "disk3_colors.csv");
    const auto base = homology(probe.complex());
    const auto punched = descriptive_homology(probe, DescriptorBall({0.9}, 0.0), 2, SubcomplexMode::Remove);
    const auto oracle_punched =
        oracle_homology(derive_subcomplex(probe, DescriptorBall({0.9}, 0.0), 2, SubcomplexMode::Remove).result, 15);
    if (base.dims.at(1).betti != 0) v.fail("base beta_1 is not 0");
    if (punched.dims.at(1).betti != 1) v.fail("punched beta_1 is not 1");
    if (oracle_punched.dims.at(1).betti != 1) v.fail("oracle beta_1 is not 1");
    if (v.pass) v.detail = "beta_1 0 -> 1";
    return v;
}

Verdict chain_subgroup() {
    Verdict v;
    Rng rng(1006);
    for (int i = 0; i < kSubgroupTriples; ++i) {
        const auto k = std::make_shared<const CellComplex>(i % 2 ? random_simplicial_complex(rng, 8, 3)
                                                                 : random_cw_complex(rng, 12));
        const auto probe = assign_probe(k, random_descriptors(rng, *k, 2, 4));
        const int p = uniform_int(rng, 0, k->max_dim());
        const auto sub = derive_subcomplex(probe, random_ball(rng, probe, p), p, random_mode(rng));
        const auto tag = "triple " + std::to_string(i);
        for (int q = 0; q <= sub.result.max_dim(); ++q) {
            const auto a = random_chain(rng, sub.result, q);
            const auto b = random_chain(rng, sub.result, q);
            try {
                const auto ia = chain_inclusion(sub, a);
                const auto ib = chain_inclusion(sub, b);
                if (chain_inclusion(sub, a + b) != ia + ib) v.fail(tag + " inclusion is not additive");
                if (!chain_inclusion(sub, Chain{q, {}}).empty()) v.fail(tag + " identity not included");
            } catch (const Error&) {
                v.fail(tag + " sum of subcomplex chains left the subcomplex");
            }
            for (const auto& z : cycle_basis(sub.result, q))
                if (!boundary_of(*k, chain_inclusion(sub, z)).empty()) v.fail(tag + " cycle is not a base cycle");
        }
    }
    if (v.pass) v.detail = std::to_string(kSubgroupTriples) + " triples";
    return v;
}

std::vector<Chart> random_cover(Rng& rng, const ProbeAssignment& probe) {
    const auto& k = probe.complex();
    const auto all = k.cells();
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<int>(kMaxCharts)));
    std::vector<Chart> charts;
    // Chart 0 spans everything so each other chart overlaps it.
    charts.push_back(make_chart(probe, {all.begin(), all.end()}, "U0"));
    while (charts.size() < n) {
        std::set<CellId> cells;
        for (const auto& c : all)
            if (coin(rng, 0.6)) cells.insert(c);
        if (cells.empty()) cells.insert(pick(rng, all));
        charts.push_back(make_chart(probe, cells, "U" + std::to_string(charts.size())));
    }
    return charts;
}

Verdict gauge_suite() {
    Verdict v;
    Rng rng(1007);
    for (int i = 0; i < kCleanCovers; ++i) {
        const auto k = std::make_shared<const CellComplex>(random_simplicial_complex(rng, 7, 2));
        const auto probe = assign_probe(k, random_descriptors(rng, *k, 2, 6));
        if (!verify_cocycle(random_cover(rng, probe), 0.0).clean()) v.fail("clean cover " + std::to_string(i) + " reported");
    }
    for (int i = 0; i < kPerturbedCovers; ++i) {
        const auto k = std::make_shared<const CellComplex>(random_simplicial_complex(rng, 7, 2));
        const auto probe = assign_probe(k, random_descriptors(rng, *k, 2, 6));
        auto atlas = build_atlas(random_cover(rng, probe));
        std::vector<std::pair<std::string, std::string>> keys;
        for (const auto& [key, t] : atlas.transitions) keys.push_back(key);
        auto& t = atlas.transitions.at(pick(rng, keys));
        auto it = std::next(t.values.begin(), uniform_int(rng, 0, static_cast<int>(t.values.size()) - 1));
        it->second[0] += uniform_real(rng, 0.1, 2.0);
        if (verify_cocycle(atlas, 0.0).size() == 0) v.fail("perturbed cover " + std::to_string(i) + " not reported");
    }
    if (v.pass)
        v.detail = std::to_string(kCleanCovers) + " clean, " + std::to_string(kPerturbedCovers) + " perturbed detected";
    return v;
}

Verdict oracle_scale() {
    Verdict v;
    Rng rng(1008);
    const auto t0 = std::chrono::steady_clock::now();
    int compared = 0;
    while (compared < kOracleComplexes) {
        auto k = compared % 2 ? random_cw_complex(rng, kOracleMaxCells) : random_simplicial_complex(rng, 5, 2);
        if (k.size() > kOracleMaxCells) continue;
        const auto a = homology(k);
        const auto b = oracle_homology(k, kOracleMaxCells);
        if (a.dims.size() != b.dims.size()) v.fail("dimension ranges differ");
        for (std::size_t p = 0; p < a.dims.size() && p < b.dims.size(); ++p)
            if (a.dims[p].cycle_rank != b.dims[p].cycle_rank || a.dims[p].boundary_rank != b.dims[p].boundary_rank ||
                a.dims[p].betti != b.dims[p].betti)
                v.fail("complex " + std::to_string(compared) + " disagrees at dim " + std::to_string(p));
        ++compared;
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= kOracleBudgetSeconds) v.fail("runtime " + fmt_seconds(elapsed));
    if (v.pass) v.detail = std::to_string(compared) + " complexes agree, " + fmt_seconds(elapsed);
    return v;
}

Verdict persistence_curve() {
    Verdict v;
    auto s = load_scenario(fixture_path("temperature.scn"));
    if (!s.ok()) {
        v.fail("scenario does not load");
        return v;
    }
    const auto curve = betti_curve(*s.value, DescriptorBall({0.9, 0.75}, 0.0), 1, SubcomplexMode::Remove);
    std::vector<std::size_t> betti;
    for (const auto& [theta, b] : curve) betti.push_back(b);
    if (betti != std::vector<std::size_t>{1, 0, 0}) v.fail("beta_1 curve is not [1,0,0]");
    if (emit_signature(signature(*s.value, 0.0, SubcomplexMode::Remove, 2)) != fixture_text("temperature_signature.csv"))
        v.fail("signature differs from golden CSV");
    const auto trace = transition_evolution(*s.value, {"a", "b", "c", "ab", "ac", "bc", "ui"},
                                            {"b", "c", "d", "bc", "bd", "cd", "uj"});
    for (std::size_t i = 1; i < trace.entries.size(); ++i)
        for (const auto& x : trace.overlap)
            if (!(trace.entries[i].translation.at(x)[0] > trace.entries[i - 1].translation.at(x)[0]))
                v.fail("temperature component is not monotone at " + x);
    if (v.pass) v.detail = "curve [1,0,0], golden CSV match, monotone trace";
    return v;
}

std::pair<int, std::string> run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "deschom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str() + "\x1f" + err.str()};
}

Verdict round_trips() {
    Verdict v;
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(DESCHOM_FIXTURES)) {
        const auto name = entry.path().filename().string();
        const auto ext = entry.path().extension().string();
        const auto body = fixture_text(name);
        bool ok = true;
        if (ext == ".cplx") {
            const auto a = parse_complex(body);
            const auto b = parse_complex(emit_complex(*a.value));
            ok = b.ok() && *b.value == *a.value && emit_complex(*b.value) == emit_complex(*a.value);
        } else if (ext == ".chart") {
            const auto a = parse_charts(body);
            const auto b = parse_charts(emit_charts(*a.value));
            ok = b.ok() && *b.value == *a.value;
        } else if (ext == ".scn") {
            const auto a = parse_scenario_file(body);
            const auto b = parse_scenario_file(emit_scenario_file(*a.value));
            ok = b.ok() && *b.value == *a.value;
        } else if (name == "temperature_signature.csv") {
            const auto a = parse_signature(body);
            ok = a.ok() && emit_signature(*a.value) == body;
        } else if (ext == ".csv") {
            const auto a = parse_descriptors(body, nullptr);
            const auto b = parse_descriptors(emit_descriptors(*a.value), nullptr);
            auto sorted = *a.value;
            std::sort(sorted.begin(), sorted.end());
            ok = b.ok() && *b.value == sorted;
        } else {
            continue;
        }
        if (!ok) v.fail(name + " does not round-trip");
        ++files;
    }
    const std::vector<std::vector<std::string>> commands{
        {"validate", fixture_path("broken.cplx").string()},
        {"homology", fixture_path("torus.cplx").string(), "--generators", "--oracle"},
        {"descriptive", fixture_path("disk3.cplx").string(), "--probe", fixture_path("disk3_colors.csv").string(), "--spectrum"},
        {"gauge", fixture_path("disk3.cplx").string(), "--probe", fixture_path("disk3_colors.csv").string(), "--charts",
         fixture_path("disk3_override.chart").string()},
        {"persist", fixture_path("temperature.scn").string()},
    };
    for (const auto& cmd : commands) {
        const auto first = run_cli(cmd);
        for (int rep = 0; rep < 3; ++rep)
            if (run_cli(cmd) != first) v.fail(cmd[0] + " output is not byte-identical across runs");
    }
    if (v.pass) v.detail = std::to_string(files) + " fixtures round-trip, " + std::to_string(commands.size()) + " CLI commands stable";
    return v;
}

} // namespace

int main() {
    const auto corpus = simplicial_corpus();
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"classical Betti suite", classical_suite},
        {"boundary of boundary is empty", [&] { return boundary_squared(corpus); }},
        {"exactness on descriptive subcomplexes", [&] { return exactness(corpus); }},
        {"retain mode recovers classical homology", recovery},
        {"hole punching on the three-colour disk", hole_punching},
        {"included chains form a subgroup", chain_subgroup},
        {"gauge cocycle suite", gauge_suite},
        {"oracle equivalence at scale", oracle_scale},
        {"temperature persistence curve", persistence_curve},
        {"determinism and round trips", round_trips},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        std::printf("[%s] %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
        if (!v.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

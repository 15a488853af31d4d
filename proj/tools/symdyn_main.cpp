// Command-line entry point: exact verification checks, family inspection,
// orbit reports, basin coverage experiments, chart comparisons, and image
// rendering. Every subcommand honors --json with a schema-stable layout.
// Exit codes: 0 all pass, 1 check failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symdyn/charts.hpp"
#include "symdyn/dynamics.hpp"
#include "symdyn/group.hpp"
#include "symdyn/mapfamily.hpp"
#include "symdyn/render.hpp"
#include "symdyn/verify.hpp"

using nlohmann::json;
using namespace symdyn;

namespace {

// Shared defaults, echoed into every JSON report.
struct Defaults {
    int max_iter = 500;
    double eps_attr = 1e-8;
    std::uint64_t seed = 1;
};
const Defaults kDefaults;

json defaults_json() {
    return json{{"max_iter", kDefaults.max_iter},
                {"eps_attr", kDefaults.eps_attr},
                {"seed", kDefaults.seed}};
}

json report_json(const CheckReport& r) {
    return json{{"name", r.name},       {"n", r.n},
                {"pass", r.pass},       {"witness", r.witness},
                {"lhs", r.lhs},         {"rhs", r.rhs},
                {"elapsed_ms", r.elapsed_ms}};
}

void print_report(const CheckReport& r) {
    std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.name
              << " (n=" << r.n << ")";
    if (!r.witness.empty()) std::cout << "  [" << r.witness << "]";
    std::cout << "\n";
}

json map1d_json(const RationalMap1D& m) {
    return json{{"num", m.num.str()}, {"den", m.den.str()}};
}

int run_verify(int n, const std::string& requested, bool as_json) {
    static const std::map<std::string, std::string> aliases = {
        {"critical-factorization", "critical-determinant-factorization"}};
    std::string want = requested;
    auto it = aliases.find(want);
    if (it != aliases.end()) want = it->second;
    if (want == "critical-determinant-factorization" && n > 6) {
        std::cerr << "verify: the symbolic determinant expansion is refused "
                     "for n > 6; it would not finish in reasonable time\n";
        return 2;
    }
    Reports reports = run_all_checks(n);
    if (!want.empty()) {
        Reports filtered;
        for (const CheckReport& r : reports)
            if (r.name == want) filtered.push_back(r);
        if (filtered.empty()) {
            std::cerr << "verify: no check named '" << requested
                      << "' is available for n=" << n << "\n";
            return 2;
        }
        reports = filtered;
    }
    bool all = true;
    for (const CheckReport& r : reports) all = all && r.pass;
    if (as_json) {
        json out;
        out["command"] = "verify";
        out["params"] = {{"n", n}, {"check", requested}};
        out["defaults"] = defaults_json();
        out["reports"] = json::array();
        for (const CheckReport& r : reports) out["reports"].push_back(report_json(r));
        out["pass"] = all;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const CheckReport& r : reports) print_report(r);
        std::cout << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    }
    return all ? 0 : 1;
}

int run_map(int n, bool as_json) {
    MapFamily f = build_map(n);
    std::ostringstream scale;
    scale << f.scale;
    if (as_json) {
        json out;
        out["command"] = "map";
        out["params"] = {{"n", n}};
        out["defaults"] = defaults_json();
        out["n"] = f.n;
        out["degree"] = f.n + 1;
        out["scale"] = scale.str();
        out["components"] = json::array();
        for (const Poly& c : f.comp) out["components"].push_back(c.str());
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "n = " << f.n << ", degree " << f.n + 1 << ", integer lift scale "
                  << scale.str() << "\n";
        for (size_t i = 0; i < f.comp.size(); ++i)
            std::cout << "g" << i + 1 << " = " << f.comp[i].str() << "\n";
    }
    return 0;
}

int run_orbits(int n, bool as_json) {
    bool all = true;
    json rows = json::array();
    for (int k = 1; k <= n - 1; ++k) {
        std::vector<Rational> coords(size_t(n - 1), Rational(0));
        for (int i = 0; i < k; ++i) coords[size_t(i)] = Rational(1);
        ProjPointExact pk = ProjPointExact::from_rationals(coords);
        size_t size = orbit(pk, n).size();
        Integer predicted = predicted_orbit_size(n, k);
        std::ostringstream pred;
        pred << predicted;
        bool ok = pred.str() == std::to_string(size);
        all = all && ok;
        if (as_json)
            rows.push_back({{"k", k},
                            {"size", size},
                            {"predicted", pred.str()},
                            {"match", ok}});
        else
            std::cout << "k=" << k << "  orbit size " << size << "  predicted "
                      << pred.str() << (ok ? "" : "  MISMATCH") << "\n";
    }
    if (as_json) {
        json out;
        out["command"] = "orbits";
        out["params"] = {{"n", n}};
        out["defaults"] = defaults_json();
        out["rows"] = rows;
        out["pass"] = all;
        std::cout << out.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

int run_coverage(int n, int samples, std::uint64_t seed, int max_iter,
                 double eps, int threads, bool as_json) {
    CoverageStat st = coverage_stat(n, samples, seed, max_iter, eps, threads);
    if (as_json) {
        json out;
        out["command"] = "coverage";
        out["params"] = {{"n", n},       {"samples", samples},
                         {"seed", seed}, {"max_iter", max_iter},
                         {"eps_attr", eps}, {"threads", threads}};
        out["defaults"] = defaults_json();
        out["resolved_fraction"] = st.resolved_fraction;
        out["histogram"] = st.orbit_histogram;
        out["resolved"] = st.resolved;
        out["unresolved"] = st.unresolved;
        out["underflow"] = st.underflow;
        out["mean_iterations"] = st.mean_iterations;
        out["max_iterations"] = st.max_iterations;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "n=" << st.n << "  samples=" << st.samples
                  << "  resolved_fraction=" << st.resolved_fraction
                  << "  unresolved=" << st.unresolved
                  << "  underflow=" << st.underflow << "\n";
        for (size_t i = 0; i < st.orbit_histogram.size(); ++i)
            std::cout << "orbit " << i << ": " << st.orbit_histogram[i] << "\n";
        std::cout << "mean iterations " << st.mean_iterations << ", max "
                  << st.max_iterations << "\n";
    }
    return 0;
}

int run_check_1d(const std::string& name, bool as_json) {
    std::vector<std::string> names =
        name.empty() ? line_chart_names() : std::vector<std::string>{name};
    bool all = true;
    json reports = json::array();
    for (const std::string& nm : names) {
        Line1DReport r = check_line_map(nm);
        bool ok = r.match && r.fixes_marked;
        all = all && ok;
        if (as_json)
            reports.push_back({{"name", r.name},
                               {"match", r.match},
                               {"fixes_marked", r.fixes_marked},
                               {"derived", map1d_json(r.derived)},
                               {"reference", map1d_json(r.reference)},
                               {"detail", r.detail},
                               {"pass", ok}});
        else {
            std::cout << (ok ? "pass" : "FAIL") << "  " << r.name
                      << "  derived " << r.derived.str() << "\n";
            if (!ok) std::cout << r.detail << "\n";
        }
    }
    if (as_json) {
        json out;
        out["command"] = "check-1d";
        out["params"] = {{"name", name}};
        out["defaults"] = defaults_json();
        out["reports"] = reports;
        out["pass"] = all;
        std::cout << out.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

int run_check_halley(bool as_json) {
    HalleyReport r = halley_check();
    bool ok = r.derived_equals_halley && r.reference_is_negated;
    if (as_json) {
        json out;
        out["command"] = "check-halley";
        out["params"] = json::object();
        out["defaults"] = defaults_json();
        out["derived_equals_halley"] = r.derived_equals_halley;
        out["reference_is_negated"] = r.reference_is_negated;
        out["derived"] = map1d_json(r.derived);
        out["halley"] = map1d_json(r.halley);
        out["reference"] = map1d_json(r.reference);
        out["detail"] = r.detail;
        out["pass"] = ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (ok ? "pass" : "FAIL") << "  derived " << r.derived.str()
                  << "\n" << r.detail << "\n";
    }
    return ok ? 0 : 1;
}

int run_check_planar(int n, bool as_json) {
    std::vector<int> ns = n == 0 ? std::vector<int>{4, 5} : std::vector<int>{n};
    bool all = true;
    json reports = json::array();
    for (int nn : ns) {
        PlanarReport r = planar_map_check(nn);
        bool ok = r.found && r.match;
        all = all && ok;
        if (as_json) {
            json d = json::array(), ref = json::array();
            for (const Poly& p : r.derived) d.push_back(p.str("x"));
            for (const Poly& p : r.reference) ref.push_back(p.str("x"));
            reports.push_back({{"n", r.n},
                               {"found", r.found},
                               {"match", r.match},
                               {"scalar", r.scalar.str()},
                               {"derived", d},
                               {"reference", ref},
                               {"detail", r.detail},
                               {"pass", ok}});
        } else {
            std::cout << (ok ? "pass" : "FAIL") << "  n=" << r.n << "  scalar "
                      << r.scalar.str() << "\n";
            if (!ok) std::cout << r.detail << "\n";
        }
    }
    if (as_json) {
        json out;
        out["command"] = "check-planar";
        out["params"] = {{"n", n}};
        out["defaults"] = defaults_json();
        out["reports"] = reports;
        out["pass"] = all;
        std::cout << out.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

int run_render(const std::string& preset_name, const std::string& config,
               const std::string& res, const std::string& out_path,
               const std::string& dump_config, int threads, bool as_json) {
    int w = 256, h = 256;
    if (!res.empty()) {
        size_t x = res.find('x');
        try {
            if (x == std::string::npos) throw std::invalid_argument(res);
            w = std::stoi(res.substr(0, x));
            h = std::stoi(res.substr(x + 1));
        } catch (const std::exception&) {
            std::cerr << "render: --res expects WxH, got '" << res << "'\n";
            return 2;
        }
        if (w <= 0 || h <= 0) {
            std::cerr << "render: resolution must be positive\n";
            return 2;
        }
    }

    RenderJob job;
    try {
        if (!config.empty()) {
            std::ifstream f(config);
            if (!f) {
                std::cerr << "render: cannot read config " << config << "\n";
                return 2;
            }
            job = job_from_json(json::parse(f));
            if (!res.empty()) {
                job.res_w = w;
                job.res_h = h;
            }
        } else {
            job = preset(preset_name, w, h);
        }
    } catch (const std::exception& e) {
        std::cerr << "render: invalid job: " << e.what() << "\n";
        return 2;
    }

    if (!dump_config.empty()) {
        std::ofstream f(dump_config);
        if (!f) {
            std::cerr << "render: cannot write " << dump_config << "\n";
            return 2;
        }
        f << job_to_json(job).dump(2) << "\n";
        if (out_path.empty()) return 0;  // config generation only
    }

    std::string out = out_path.empty()
                          ? (job.name.empty() ? "render" : job.name) + ".ppm"
                          : out_path;
    BasinGrid grid = render(job, threads);
    write_ppm(grid, out);
    int resolved = 0, unresolved = 0, underflow = 0;
    for (const BasinResult& r : grid.cells) {
        if (r.status == BasinStatus::resolved) ++resolved;
        else if (r.status == BasinStatus::underflow) ++underflow;
        else ++unresolved;
    }
    if (as_json) {
        json j;
        j["command"] = "render";
        j["params"] = {{"preset", preset_name}, {"config", config},
                       {"resolution", {job.res_w, job.res_h}},
                       {"out", out},            {"threads", threads},
                       {"max_iter", job.max_iter}, {"eps_attr", job.eps_attr}};
        j["defaults"] = defaults_json();
        j["resolved"] = resolved;
        j["unresolved"] = unresolved;
        j["underflow"] = underflow;
        j["resolved_fraction"] =
            double(resolved) / double(grid.cells.size());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "wrote " << out << " (" << job.res_w << "x" << job.res_h
                  << "), resolved " << resolved << "/" << grid.cells.size()
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "symdyn: exact construction and verification of a symmetric "
        "critically finite map family, with basin dynamics and rendering"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output")
        ->configurable(false);

    int verify_n = 3;
    std::string verify_check;
    CLI::App* verify = app.add_subcommand("verify", "run the exact check suite");
    verify->add_option("--n", verify_n, "symmetry parameter")
        ->required()
        ->check(CLI::Range(3, 8));
    verify->add_option("--check", verify_check, "run a single named check");
    verify->add_flag("--json", as_json, "JSON output");

    int map_n = 3;
    CLI::App* mapc = app.add_subcommand("map", "print the family's components");
    mapc->add_option("--n", map_n, "symmetry parameter")
        ->required()
        ->check(CLI::Range(3, 12));
    mapc->add_flag("--json", as_json, "JSON output");

    int orbits_n = 3;
    CLI::App* orbits = app.add_subcommand(
        "orbits", "orbit sizes of the distinguished points, with predictions");
    orbits->add_option("--n", orbits_n, "symmetry parameter")
        ->required()
        ->check(CLI::Range(3, 12));
    orbits->add_flag("--json", as_json, "JSON output");

    int cov_n = 3, cov_samples = 1000, cov_max_iter = kDefaults.max_iter;
    int cov_threads = 0;
    std::uint64_t cov_seed = kDefaults.seed;
    double cov_eps = kDefaults.eps_attr;
    CLI::App* cov = app.add_subcommand(
        "coverage", "random-start basin statistics (seeded, reproducible)");
    cov->add_option("--n", cov_n, "symmetry parameter")
        ->required()
        ->check(CLI::Range(3, 8));
    cov->add_option("--samples", cov_samples, "number of random starts")
        ->check(CLI::PositiveNumber);
    cov->add_option("--seed", cov_seed, "stream seed");
    cov->add_option("--max-iter", cov_max_iter, "iteration budget")
        ->check(CLI::PositiveNumber);
    cov->add_option("--eps", cov_eps, "capture tolerance");
    cov->add_option("--threads", cov_threads, "worker threads (0 = auto)");
    cov->add_flag("--json", as_json, "JSON output");

    std::string c1d_name;
    CLI::App* c1d = app.add_subcommand(
        "check-1d", "compare derived invariant-line maps with the references");
    c1d->add_option("--name", c1d_name, "single chart name")
        ->check(CLI::IsMember(line_chart_names()));
    c1d->add_flag("--json", as_json, "JSON output");

    CLI::App* chal = app.add_subcommand(
        "check-halley", "compare the two-variable chart map with Halley's method");
    chal->add_flag("--json", as_json, "JSON output");

    int planar_n = 0;
    CLI::App* cpl = app.add_subcommand(
        "check-planar", "compare derived planar maps with the references");
    cpl->add_option("--n", planar_n, "restrict to one case")
        ->check(CLI::IsMember({4, 5}));
    cpl->add_flag("--json", as_json, "JSON output");

    std::string r_preset, r_config, r_res, r_out, r_dump;
    int r_threads = 0;
    CLI::App* rend = app.add_subcommand("render", "render a basin image (PPM)");
    CLI::Option* opt_preset =
        rend->add_option("--preset", r_preset, "named figure chart")
            ->check(CLI::IsMember(preset_names()));
    rend->add_option("--config", r_config, "JSON job description")
        ->excludes(opt_preset);
    rend->add_option("--res", r_res, "resolution WxH (default 256x256)");
    rend->add_option("--out", r_out, "output file (default <name>.ppm)");
    rend->add_option("--dump-config", r_dump,
                     "write the job as JSON; skips rendering unless --out is given");
    rend->add_option("--threads", r_threads, "worker threads (0 = auto)");
    rend->add_flag("--json", as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(verify))
            return run_verify(verify_n, verify_check, as_json);
        if (app.got_subcommand(mapc)) return run_map(map_n, as_json);
        if (app.got_subcommand(orbits)) return run_orbits(orbits_n, as_json);
        if (app.got_subcommand(cov))
            return run_coverage(cov_n, cov_samples, cov_seed, cov_max_iter,
                                cov_eps, cov_threads, as_json);
        if (app.got_subcommand(c1d)) return run_check_1d(c1d_name, as_json);
        if (app.got_subcommand(chal)) return run_check_halley(as_json);
        if (app.got_subcommand(cpl)) return run_check_planar(planar_n, as_json);
        if (app.got_subcommand(rend)) {
            if (r_preset.empty() && r_config.empty()) {
                std::cerr << "render: either --preset or --config is required\n";
                return 2;
            }
            return run_render(r_preset, r_config, r_res, r_out, r_dump,
                              r_threads, as_json);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

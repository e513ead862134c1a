// rbody: command-line driver for the restricted 5-body orbit solver.
//
// Every command prints a short summary and writes a JSON report under
// <out-dir>/reports. Exit codes: 0 ok, 1 validation, 2 numerical, 3 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rbody/io.hpp"
#include "rbody/rbody.hpp"

namespace fs = std::filesystem;
using rbody::Json;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

/// Reads `--config` files as JSON; nested objects address subcommands.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        Json j;
        for (const CLI::Option* opt : app->get_options()) {
            if (opt->get_configurable() && !opt->get_lnames().empty() && (default_also || opt->count() > 0)) {
                const auto results = opt->results();
                if (!results.empty()) j[opt->get_lnames().front()] = results.size() == 1 ? Json(results[0]) : Json(results);
            }
        }
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        Json j;
        try {
            j = Json::parse(input);
        } catch (const Json::exception& e) {
            throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
        }
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const Json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    static void collect(const Json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto next = parents;
                next.push_back(key);
                collect(value, next, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const Json& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            out.push_back(std::move(item));
        }
    }
};

struct Globals {
    std::string out_dir;
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double seed_tolerance = 1e-10;

    rbody::IntegratorConfig integrator() const {
        rbody::IntegratorConfig c;
        c.rel_tol = rel_tol;
        c.abs_tol = abs_tol;
        c.validate();
        return c;
    }

    rbody::NewtonConfig newton() const {
        rbody::NewtonConfig n;
        n.tolerance = seed_tolerance;
        n.validate();
        return n;
    }
};

std::string sci(double x, int digits = 3) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(digits) << x;
    return s.str();
}

void write_report(const Globals& g, const std::string& name, const Json& report) {
    const fs::path dir = fs::path(g.out_dir) / "reports";
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw rbody::IoError("cannot create " + dir.string() + ": " + ec.message());
    rbody::OrbitStore::write_file(dir / (name + ".json"), rbody::dump_json(report));
}

Json record_summary(const rbody::OrbitRecord& r) {
    return {{"id", rbody::record_id(r.problem)},
            {"t0", r.problem.t0()},
            {"a", r.a},
            {"b", r.b},
            {"iterations", r.iterations},
            {"residual_norm", r.residual_norm},
            {"closure_residual", r.closure_residual},
            {"symmetry_residual", r.symmetry_residual},
            {"classification", rbody::to_string(r.classification)},
            {"mean_radius", r.mean_radius()}};
}

void print_record(const rbody::OrbitRecord& r) {
    std::cout << std::setprecision(15) << rbody::record_id(r.problem) << ": a = " << r.a << ", b = " << r.b << "  ("
              << rbody::to_string(r.classification) << ", " << r.iterations << " it, |r| = " << sci(r.residual_norm)
              << ", closure " << sci(r.closure_residual) << ", symmetry " << sci(r.symmetry_residual) << ")\n";
}

int cmd_choreo_verify(const Globals& g, const std::string& family, int grid, bool corrupt) {
    std::vector<rbody::ChoreographyIC> ics;
    if (family == "isosceles" || family == "both") ics.push_back(rbody::super_eight_isosceles());
    if (family == "orthogonal" || family == "both") ics.push_back(rbody::super_eight_orthogonal());
    if (ics.empty()) throw rbody::ValidationError("family must be isosceles, orthogonal or both");
    bool ok = true;
    Json report;
    report["rel_tol"] = g.rel_tol;
    report["thresholds"] = {{"period", 1e-8}, {"quarter", 1e-9}, {"symmetry", 1e-8}};
    for (rbody::ChoreographyIC& ic : ics) {
        if (corrupt) ic.state.positions[0].x += 1e-3;
        const auto r = rbody::verify_choreography(ic, g.integrator(), grid);
        const bool pass = r.period_residual <= 1e-8 && r.quarter_residual <= 1e-9 && r.symmetry_residual <= 1e-8;
        ok = ok && pass;
        std::cout << rbody::to_string(ic.family) << ": period " << sci(r.period_residual) << ", quarter "
                  << sci(r.quarter_residual) << " (literal labels " << sci(r.quarter_residual_literal)
                  << "), symmetry " << sci(r.symmetry_residual) << (pass ? "  ok" : "  FAILED") << '\n';
        report["families"].push_back({{"family", rbody::to_string(ic.family)},
                                      {"period_residual", r.period_residual},
                                      {"quarter_residual", r.quarter_residual},
                                      {"quarter_residual_literal", r.quarter_residual_literal},
                                      {"symmetry_residual", r.symmetry_residual},
                                      {"pass", pass}});
    }
    report["pass"] = ok;
    write_report(g, "choreo-verify", report);
    return ok ? kOk : kNumerical;
}

int cmd_spectrum(const Globals& g, double alpha, int p, int m, long l_max) {
    if (l_max < 1) throw rbody::ValidationError("l-max must be at least 1");
    const rbody::PotentialLaw law(alpha);
    const auto margin = rbody::nondegeneracy_margin(p, law, l_max);
    Json report{{"alpha", alpha}, {"p", p}, {"m", m}, {"l_max", l_max}};
    for (const auto& mode : margin.modes) {
        report["modes"].push_back({{"l", mode.l},
                                   {"lambda_minus", mode.eigenvalues.minus},
                                   {"lambda_plus", mode.eigenvalues.plus},
                                   {"degenerate", mode.degenerate}});
    }
    report["degenerate_modes"] = margin.degenerate_modes;
    report["min_abs_eigenvalue"] = margin.min_abs_eigenvalue;
    std::cout << "alpha = " << alpha << ", p = " << p << ", |l| <= " << l_max << '\n';
    std::cout << "degenerate modes:";
    if (margin.degenerate_modes.empty()) std::cout << " none";
    for (long l : margin.degenerate_modes) std::cout << ' ' << l;
    std::cout << "\nmin |lambda| over all modes: " << sci(margin.min_abs_eigenvalue) << '\n';
    if (l_max >= static_cast<long>(m) * p) {
        const double restricted = rbody::restricted_invertibility(p, m, l_max, law);
        report["restricted_margin"] = restricted;
        std::cout << "min |lambda| on l = 0 mod " << m * p << ": " << sci(restricted) << '\n';
    } else {
        report["restricted_margin"] = nullptr;
        std::cout << "no retained modes l = 0 mod " << m * p << " within |l| <= " << l_max << '\n';
    }
    write_report(g, "spectrum", report);
    return kOk;
}

Eigen::Vector2d parse_seed(const std::string& seed, const rbody::ShootingProblem& pb, rbody::OrbitClass kind) {
    if (seed == "kepler") return rbody::kepler_guess(pb, kind);
    if (seed == "moon") return rbody::kepler_guess(pb, rbody::OrbitClass::moon);
    const auto comma = seed.find(',');
    if (comma == std::string::npos) throw rbody::ValidationError("seed must be kepler, moon or a,b");
    try {
        return {std::stod(seed.substr(0, comma)), std::stod(seed.substr(comma + 1))};
    } catch (const std::exception&) {
        throw rbody::ValidationError("cannot parse seed '" + seed + "'");
    }
}

int cmd_shoot(const Globals& g, const std::string& family, const std::string& t0, const std::string& target,
              const std::string& seed, const std::string& kind) {
    const rbody::ShootingProblem pb{rbody::parse_family(family), rbody::quarter_count_of(rbody::parse_pi_expression(t0)),
                                    rbody::parse_target(target), g.integrator()};
    const Eigen::Vector2d guess = parse_seed(seed, pb, rbody::parse_orbit_class(kind));
    const rbody::OrbitRecord rec = rbody::solve(pb, guess, g.newton());
    rbody::OrbitStore store(g.out_dir);
    const std::string id = store.put(rec);
    print_record(rec);
    std::cout << "stored " << store.record_path(id).string() << '\n';
    return kOk;
}

int cmd_sweep(const Globals& g, const std::string& family, const std::string& t0_list, const std::string& target,
              bool warm_start, const std::string& kind) {
    std::vector<int> counts;
    for (double t : rbody::parse_pi_list(t0_list)) counts.push_back(rbody::quarter_count_of(t));
    const auto items =
        rbody::sweep(counts, warm_start ? rbody::SeedStrategy::warm_start : rbody::SeedStrategy::kepler,
                     rbody::parse_family(family), rbody::parse_target(target), rbody::parse_orbit_class(kind),
                     g.integrator(), g.newton());
    rbody::OrbitStore store(g.out_dir);
    Json report{{"t0", t0_list}, {"warm_start", warm_start}};
    report["items"] = Json::array();
    std::vector<rbody::OrbitRecord> converged;
    for (const auto& item : items) {
        if (item.record) {
            store.put(*item.record);
            print_record(*item.record);
            converged.push_back(*item.record);
            report["items"].push_back(record_summary(*item.record));
        } else {
            std::cout << "T0 = " << item.quarter_count << " pi/4: failed (" << item.failure << ")\n";
            report["items"].push_back(
                {{"t0", item.quarter_count * rbody::kQuarterPeriod}, {"failure", item.failure}});
        }
    }
    std::size_t comets = 0;
    for (const auto& r : converged) comets += r.classification == rbody::OrbitClass::comet;
    if (comets >= 2) {
        const double dev = rbody::kepler_scaling_deviation(converged);
        report["kepler_scaling_deviation"] = dev;
        std::cout << "radius / period^(2/3) spread: " << std::fixed << std::setprecision(2) << 100.0 * dev << "%\n";
    }
    write_report(g, "sweep", report);
    return converged.size() == items.size() ? kOk : kNumerical;
}

int cmd_table1(const Globals& g, const std::vector<int>& rows, double match_tol) {
    rbody::Table1Config cfg;
    cfg.integrator = g.integrator();
    cfg.newton = g.newton();
    cfg.rows = rows;
    const auto results = rbody::reproduce_table1(cfg);
    rbody::OrbitStore store(g.out_dir);
    Json report{{"match_tolerance", match_tol}};
    report["rows"] = Json::array();
    int matched = 0;
    for (const auto& res : results) {
        const bool ok = res.matches(match_tol);
        matched += ok;
        Json row{{"row", res.row.index},
                 {"published", {res.row.a, res.row.b}},
                 {"seed", {res.seed[0], res.seed[1]}},
                 {"seconds", res.seconds},
                 {"match", ok}};
        std::cout << "row " << res.row.index << ": ";
        if (res.record) {
            store.put(*res.record);
            row["solution"] = record_summary(*res.record);
            row["error"] = res.error;
            std::cout << std::setprecision(15) << "(" << res.record->a << ", " << res.record->b << ")  error "
                      << sci(res.error, 2) << "  " << rbody::to_string(res.record->classification) << "  "
                      << std::fixed << std::setprecision(2) << res.seconds << " s" << (ok ? "" : "  MISMATCH") << '\n';
            std::cout.unsetf(std::ios::floatfield);
        } else {
            row["failure"] = res.failure;
            std::cout << "failed: " << res.failure << '\n';
        }
        report["rows"].push_back(row);
    }
    report["matched"] = matched;
    std::cout << matched << "/" << results.size() << " rows within " << sci(match_tol, 0) << '\n';
    write_report(g, "table1", report);
    return matched == static_cast<int>(results.size()) ? kOk : kNumerical;
}

int cmd_export(const Globals& g, const std::string& id, int samples, const std::string& output) {
    rbody::OrbitStore store(g.out_dir);
    const rbody::OrbitRecord rec = store.get(id);
    fs::path path = output.empty() ? fs::path(g.out_dir) / "exports" / (id + ".csv") : fs::path(output);
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw rbody::IoError("cannot create " + path.parent_path().string());
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw rbody::IoError("cannot write " + path.string());
    rbody::export_csv(rec, samples, out);
    if (!out) throw rbody::IoError("write failed for " + path.string());
    std::cout << "wrote " << samples + 1 << " rows to " << path.string() << '\n';
    return kOk;
}

int cmd_frames_check(const Globals& g, int q_comet, int r_moon) {
    const auto cfg = g.integrator();
    const rbody::PotentialLaw grav = rbody::PotentialLaw::gravitational();
    const rbody::ChoreographyEphemeris eph(rbody::ChoreographyFamily::isosceles, cfg);
    const auto& row = rbody::table1_rows().front();
    const double comet = rbody::comet_conjugacy_residual(rbody::CometFrame(1, q_comet, grav), eph,
                                                         rbody::MassVector{1.0, 1.0, 1.0, 1.0},
                                                         {{row.a, 0.0}, {0.0, row.b}, 0.0}, 64, cfg);
    const auto cc = rbody::maxwell_configuration(4, grav);
    const double moon =
        rbody::moon_conjugacy_residual(rbody::MoonFrame(r_moon, 1, grav), cc, {1.0, 0.0}, {0.0, 0.0}, 64, cfg);
    const bool ok = comet <= 1e-8 && moon <= 1e-8;
    std::cout << "comet frame (p = 1, q = " << q_comet << "): " << sci(comet) << '\n'
              << "moon frame (r = " << r_moon << ", q = 1): " << sci(moon) << '\n';
    write_report(g, "frames-check",
                 {{"comet_residual", comet}, {"moon_residual", moon}, {"threshold", 1e-8}, {"pass", ok}});
    return ok ? kOk : kNumerical;
}

int cmd_perturbation_order(const Globals& g, const std::string& kind, const std::vector<double>& alphas) {
    std::vector<rbody::PerturbationKind> kinds;
    if (kind == "comet" || kind == "both") kinds.push_back(rbody::PerturbationKind::comet);
    if (kind == "moon" || kind == "both") kinds.push_back(rbody::PerturbationKind::moon);
    if (kinds.empty()) throw rbody::ValidationError("kind must be comet, moon or both");
    const auto grid = rbody::default_eps_grid();
    Json report;
    report["fits"] = Json::array();
    bool ok = true;
    for (auto k : kinds) {
        for (double alpha : alphas) {
            const rbody::PotentialLaw law(alpha);
            const auto fit = rbody::perturbation_order(k, law, grid, g.integrator());
            const double expected = k == rbody::PerturbationKind::comet ? 2.0 : alpha + 1.0;
            const bool pass = std::fabs(fit.slope - expected) <= 0.1;
            ok = ok && pass;
            std::cout << rbody::to_string(k) << " alpha = " << alpha << ": slope " << std::fixed
                      << std::setprecision(4) << fit.slope << " (expected " << expected << ")"
                      << (pass ? "" : "  OFF") << '\n';
            std::cout.unsetf(std::ios::floatfield);
            report["fits"].push_back({{"kind", rbody::to_string(k)},
                                      {"alpha", alpha},
                                      {"slope", fit.slope},
                                      {"expected", expected},
                                      {"eps", fit.eps},
                                      {"gradient_norms", fit.gradient_norms}});
        }
    }
    write_report(g, "perturbation-order", report);
    return ok ? kOk : kNumerical;
}

int cmd_central_config(const Globals& g, int n, double alpha) {
    const rbody::PotentialLaw law(alpha);
    const auto cc = rbody::maxwell_configuration(n, law);
    const double closure = rbody::relative_equilibrium_closure(cc, g.integrator());
    Json report{{"n", n}, {"alpha", alpha}, {"residual", cc.residual}, {"iterations", cc.iterations},
                {"closure", closure}};
    std::cout << "Maxwell n = " << n << ", alpha = " << alpha << ": residual " << sci(cc.residual) << " after "
              << cc.iterations << " iterations, closure after 2 pi " << sci(closure) << '\n';
    for (std::size_t j = 0; j < cc.points.size(); ++j) {
        std::cout << std::setprecision(15) << "  a" << j + 1 << " = (" << cc.points[j].x << ", " << cc.points[j].y
                  << ")\n";
        report["points"].push_back({cc.points[j].x, cc.points[j].y});
    }
    write_report(g, "central-config", report);
    return closure <= 1e-8 && cc.residual <= 1e-12 ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetric periodic orbits of the restricted 5-body problem with super-eight primaries"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with option values; nested objects address subcommands");

    Globals g;
    const char* env_out = std::getenv("RBODY_OUT_DIR");
    g.out_dir = env_out != nullptr && *env_out != '\0' ? env_out : "rbody-out";
    app.add_option("--out-dir", g.out_dir, "Directory for orbit records and reports (env RBODY_OUT_DIR)")
        ->capture_default_str();
    app.add_option("--rel-tol", g.rel_tol, "Integrator relative tolerance")->capture_default_str();
    app.add_option("--abs-tol", g.abs_tol, "Integrator absolute tolerance")->capture_default_str();
    app.add_option("--seed-tolerance", g.seed_tolerance, "Residual norm at which a Newton iterate counts as converged")
        ->capture_default_str();

    int code = kOk;
    std::function<int()> run;

    auto* choreo = app.add_subcommand("choreo", "Super-eight checks");
    choreo->require_subcommand(1);
    auto* verify = choreo->add_subcommand("verify", "Closure, quarter-period and symmetry residuals");
    std::string cv_family = "both";
    int cv_grid = 64;
    bool cv_corrupt = false;
    verify->add_option("--family", cv_family, "isosceles, orthogonal or both")->capture_default_str();
    verify->add_option("--grid", cv_grid, "Symmetry sample count")->capture_default_str()->check(CLI::PositiveNumber);
    verify->add_flag("--corrupt-ic", cv_corrupt, "Shift q1x by 1e-3 before verifying");
    verify->callback([&] { run = [&] { return cmd_choreo_verify(g, cv_family, cv_grid, cv_corrupt); }; });

    auto* spectrum = app.add_subcommand("spectrum", "Hessian block eigenvalues at the circular Kepler orbit");
    double sp_alpha = 2.0;
    int sp_p = 1;
    int sp_m = 2;
    long sp_lmax = 50;
    spectrum->add_option("--alpha", sp_alpha, "Potential exponent (>= 1)")->capture_default_str();
    spectrum->add_option("--p", sp_p, "Winding number p")->capture_default_str()->check(CLI::PositiveNumber);
    spectrum->add_option("--m", sp_m, "Cyclic symmetry order")->capture_default_str()->check(CLI::PositiveNumber);
    spectrum->add_option("--l-max", sp_lmax, "Largest |l| scanned")->capture_default_str();
    spectrum->callback([&] { run = [&] { return cmd_spectrum(g, sp_alpha, sp_p, sp_m, sp_lmax); }; });

    std::string family = "isosceles";
    std::string target = "y-perp";
    std::string kind = "comet";

    auto* shoot = app.add_subcommand("shoot", "Solve one symmetric orbit");
    std::string sh_t0 = "2pi";
    std::string sh_seed = "kepler";
    shoot->add_option("--family", family, "Start configuration: isosceles or orthogonal")->capture_default_str();
    shoot->add_option("--t0", sh_t0, "Half period, e.g. 2pi or 5pi/2")->capture_default_str();
    shoot->add_option("--target", target, "x-perp or y-perp")->capture_default_str();
    shoot->add_option("--seed", sh_seed, "kepler, moon, or an explicit a,b")->capture_default_str();
    shoot->add_option("--kind", kind, "Seed family for 'kepler': comet or moon")->capture_default_str();
    shoot->callback([&] { run = [&] { return cmd_shoot(g, family, sh_t0, target, sh_seed, kind); }; });

    auto* sweep = app.add_subcommand("sweep", "Solve a list or range of half periods");
    std::string sw_t0 = "2pi:5pi:pi";
    bool sw_warm = false;
    sweep->add_option("--t0", sw_t0, "start:stop:step or comma list")->capture_default_str();
    sweep->add_option("--family", family, "Start configuration")->capture_default_str();
    sweep->add_option("--target", target, "x-perp or y-perp")->capture_default_str();
    sweep->add_option("--kind", kind, "Seed family: comet or moon")->capture_default_str();
    sweep->add_flag("--warm-start", sw_warm, "Seed each item from the previous solution");
    sweep->callback([&] { run = [&] { return cmd_sweep(g, family, sw_t0, target, sw_warm, kind); }; });

    auto* table1 = app.add_subcommand("table1", "Reproduce the six published orbits");
    std::vector<int> t1_rows{1, 2, 3, 4, 5, 6};
    double t1_match = 1e-9;
    table1->add_option("--rows", t1_rows, "Rows to solve")->delimiter(',')->capture_default_str();
    table1->add_option("--match-tol", t1_match, "Allowed distance to the published (a, b)")->capture_default_str();
    table1->callback([&] { run = [&] { return cmd_table1(g, t1_rows, t1_match); }; });

    auto* exp = app.add_subcommand("export", "Write a stored orbit as CSV");
    std::string ex_id;
    int ex_samples = 512;
    std::string ex_out;
    exp->add_option("--id", ex_id, "Orbit id from index.json")->required();
    exp->add_option("--samples", ex_samples, "Sample intervals per period")->capture_default_str();
    exp->add_option("--output", ex_out, "CSV path (default <out-dir>/exports/<id>.csv)");
    exp->callback([&] { run = [&] { return cmd_export(g, ex_id, ex_samples, ex_out); }; });

    auto* frames = app.add_subcommand("frames", "Rotating-frame checks");
    frames->require_subcommand(1);
    auto* check = frames->add_subcommand("check", "Rotating vs inertial integration");
    int fr_q = 8;
    int fr_r = 32;
    check->add_option("--comet-q", fr_q, "Comet frame q (p = 1)")->capture_default_str()->check(CLI::PositiveNumber);
    check->add_option("--moon-r", fr_r, "Moon frame r (q = 1)")->capture_default_str()->check(CLI::PositiveNumber);
    check->callback([&] { run = [&] { return cmd_frames_check(g, fr_q, fr_r); }; });

    auto* po = app.add_subcommand("perturbation-order", "Log-log slope of the perturbation gradient");
    std::string po_kind = "both";
    std::vector<double> po_alpha{1.0, 2.0, 3.0};
    po->add_option("--kind", po_kind, "comet, moon or both")->capture_default_str();
    po->add_option("--alpha", po_alpha, "Potential exponents")->delimiter(',')->capture_default_str();
    po->callback([&] { run = [&] { return cmd_perturbation_order(g, po_kind, po_alpha); }; });

    auto* cc = app.add_subcommand("central-config", "Maxwell central configuration");
    int cc_n = 4;
    double cc_alpha = 2.0;
    cc->add_option("--n", cc_n, "Body count including the centre")->capture_default_str();
    cc->add_option("--alpha", cc_alpha, "Potential exponent")->capture_default_str();
    cc->callback([&] { run = [&] { return cmd_central_config(g, cc_n, cc_alpha); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        code = run ? run() : kValidation;
    } catch (const rbody::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const rbody::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const rbody::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const rbody::GridError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const rbody::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    }
    return code;
}

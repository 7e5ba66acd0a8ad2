// Command-line front-end: parameter parsing, experiment orchestration, and
// CSV/JSON/SVG emission for the library's estimators, oracles, and the
// verification suites.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fkwell/groundstate.hpp"
#include "fkwell/levy.hpp"
#include "fkwell/oracles.hpp"
#include "fkwell/sampler.hpp"
#include "fkwell/stopping.hpp"
#include "fkwell/verify.hpp"

using nlohmann::json;
using namespace fkwell;

namespace {

struct Options {
    int d = 1;
    double alpha = 1.0;
    double m = 0.0;
    double a = 1.0;
    double v = 5.0;
    std::vector<double> x;
    double lambda = 0.5;
    long n = 100000;
    double h = 1e-3;
    double tmax = 50.0;
    std::uint64_t seed = 0;
    int streams = 1;
    std::string out = "-";
    std::string format = "csv";
    std::string plot;

    ModelParams model() const { return {d, alpha, m}; }
    WellSpec well() const { return {a, v}; }
    McConfig mc() const {
        McConfig c;
        c.n = n;
        c.streams = streams;
        c.workers = streams;
        c.seed = {seed, 0};
        c.step = {h, tmax, false};
        return c;
    }
    json echo(const std::string& cmd) const {
        return {{"command", cmd}, {"d", d},         {"alpha", alpha},
                {"m", m},         {"a", a},         {"v", v},
                {"x", x},         {"lambda", lambda}, {"n", n},
                {"h", h},         {"tmax", tmax},   {"seed", seed},
                {"streams", streams}, {"format", format}};
    }
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Row-oriented result table; every cell keeps its native JSON type so the CSV
// and JSON emitters agree field by field.
struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;  // objects keyed by column name
    json header;             // optional extra metadata (spectral solves)

    void add(std::initializer_list<json> cells) {
        json row = json::object();
        auto it = cells.begin();
        for (const auto& c : columns) row[c] = *it++;
        rows.push_back(std::move(row));
    }

    std::string csv() const {
        std::ostringstream os;
        if (!header.empty()) os << "# " << header.dump() << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < columns.size(); ++i) {
                const json& c = row.at(columns[i]);
                if (i) os << ",";
                if (c.is_boolean())
                    os << (c.get<bool>() ? 1 : 0);
                else if (c.is_number_float())
                    os << fmt17(c.get<double>());
                else
                    os << c.dump();
            }
            os << "\n";
        }
        return os.str();
    }

    std::string as_json(const json& meta) const {
        json doc = {{"meta", meta}, {"rows", rows}};
        if (!header.empty()) doc["header"] = header;
        return doc.dump(2) + "\n";
    }
};

void write_output(const Options& opt, const std::string& cmd,
                  const Table& table) {
    const std::string text = opt.format == "json"
                                 ? table.as_json(opt.echo(cmd))
                                 : table.csv();
    if (opt.out == "-" || opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output: " + opt.out);
        f << text;
    }
}

// Minimal static figure: first column on the horizontal axis, every other
// numeric column as a polyline.
void write_plot(const std::string& path, const Table& table) {
    if (table.rows.empty() || table.columns.size() < 2) return;
    const int W = 720, H = 480, pad = 50;
    std::vector<std::vector<double>> series(table.columns.size());
    for (const auto& row : table.rows)
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const json& cell = row.at(table.columns[c]);
            series[c].push_back(cell.is_number() ? cell.get<double>()
                                                 : std::nan(""));
        }
    auto minmax = [](const std::vector<double>& v, double& lo, double& hi) {
        for (double y : v)
            if (std::isfinite(y)) {
                lo = std::min(lo, y);
                hi = std::max(hi, y);
            }
    };
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    minmax(series[0], x0, x1);
    for (std::size_t c = 1; c < series.size(); ++c) minmax(series[c], y0, y1);
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c",
                            "#9467bd", "#8c564b", "#e377c2"};
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open plot output: " + path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W
      << "' height='" << H << "'>\n<rect width='100%' height='100%' "
      << "fill='white'/>\n";
    for (std::size_t c = 1; c < series.size(); ++c) {
        f << "<polyline fill='none' stroke='" << colors[(c - 1) % 6]
          << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < series[0].size(); ++i) {
            if (!std::isfinite(series[c][i])) continue;
            const double px =
                pad + (series[0][i] - x0) / (x1 - x0) * (W - 2 * pad);
            const double py =
                H - pad - (series[c][i] - y0) / (y1 - y0) * (H - 2 * pad);
            f << px << "," << py << " ";
        }
        f << "'/>\n<text x='" << (pad + 8) << "' y='"
          << (pad + 16 * c) << "' fill='" << colors[(c - 1) % 6]
          << "' font-size='12'>" << table.columns[c] << "</text>\n";
    }
    f << "</svg>\n";
}

void emit(const Options& opt, const std::string& cmd, const Table& table) {
    write_output(opt, cmd, table);
    if (!opt.plot.empty()) write_plot(opt.plot, table);
}

// Plain key=value configuration file; unknown keys are an error. Values
// loaded here act as defaults that explicit flags override.
void apply_config(const std::string& path, Options& opt) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config: " + path);
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "d") opt.d = std::stoi(val);
        else if (key == "alpha") opt.alpha = std::stod(val);
        else if (key == "m") opt.m = std::stod(val);
        else if (key == "a") opt.a = std::stod(val);
        else if (key == "v") opt.v = std::stod(val);
        else if (key == "lambda") opt.lambda = std::stod(val);
        else if (key == "n") opt.n = std::stol(val);
        else if (key == "h") opt.h = std::stod(val);
        else if (key == "tmax") opt.tmax = std::stod(val);
        else if (key == "seed") opt.seed = std::stoull(val);
        else if (key == "streams") opt.streams = std::stoi(val);
        else if (key == "out") opt.out = val;
        else if (key == "format") opt.format = val;
        else if (key == "plot") opt.plot = val;
        else if (key == "x") {
            opt.x.clear();
            std::istringstream is(val);
            std::string tok;
            while (std::getline(is, tok, ','))
                if (!tok.empty()) opt.x.push_back(std::stod(tok));
        } else {
            throw std::runtime_error("unknown config key: " + key);
        }
    }
}

std::vector<double> default_r_grid(double lo, double hi, int n) {
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = lo + (hi - lo) * i / (n - 1);
    return r;
}

// --- subcommand bodies -----------------------------------------------------

void run_density(const Options& opt, bool tail_only) {
    const ModelParams p = opt.model();
    const ModelParams p0{p.d, p.alpha, 0.0};
    Table t;
    t.columns = {"r", "j_m", "j_0", "sigma", "tail_mass"};
    const std::vector<double> grid =
        opt.x.empty() ? default_r_grid(0.05, 5.0, 100) : opt.x;
    for (double r : grid)
        t.add({r, jump_density(p, r), jump_density(p0, r),
               p.m > 0.0 ? sigma_density(p, r) : 0.0, tail_mass(p, r)});
    emit(opt, tail_only ? "tailmass" : "density", t);
}

void run_sample(const Options& opt) {
    const ProcessSpec proc = ProcessSpec::stable(opt.model());
    const Region region = Region::exit_ball(opt.a);
    StepConfig step{opt.h, opt.tmax, true};
    const Point x0{opt.x.empty() ? 0.0 : opt.x[0], 0.0, 0.0};
    Table t;
    t.columns = {"stream", "path_id", "tau_hat",
                 "occupation", "x_after_norm", "truncated"};
    for (long i = 0; i < opt.n; ++i) {
        const int stream = static_cast<int>(i % opt.streams);
        Rng rng(opt.seed, static_cast<std::uint64_t>(stream),
                static_cast<std::uint64_t>(i / opt.streams));
        const StoppedSample s = walk_until(proc, x0, region, step, rng);
        t.add({stream, i, s.tau_hat, s.occupation,
               norm(s.x_after, proc.d), s.truncated});
    }
    emit(opt, "sample", t);
}

Table estimate_table(const Options& opt,
                     const std::function<Estimate(const Point&)>& fn) {
    Table t;
    t.columns = {"x",        "value",      "stderr", "n",
                 "truncated_fraction", "tail_bound", "diverged"};
    const std::vector<double> xs = opt.x.empty()
                                       ? std::vector<double>{0.0}
                                       : opt.x;
    for (double x : xs) {
        const Estimate e = fn({x, 0, 0});
        t.add({x, e.value, e.stderr_, e.n, e.truncated_fraction,
               e.tail_bound, e.diverged});
    }
    return t;
}

void run_survival(const Options& opt) {
    const ProcessSpec proc = ProcessSpec::stable(opt.model());
    const McConfig mc = opt.mc();
    emit(opt, "survival", estimate_table(opt, [&](const Point& x) {
             return estimate_survival(proc, opt.a, x, opt.tmax, mc);
         }));
}

void run_exit_mgf(const Options& opt) {
    const ProcessSpec proc = ProcessSpec::stable(opt.model());
    const double lambda_R = dirichlet_lambda_R(opt.model(), opt.a);
    const McConfig mc = opt.mc();
    emit(opt, "exit-mgf", estimate_table(opt, [&](const Point& x) {
             return estimate_exit_mgf(proc, opt.a, x, opt.lambda, lambda_R,
                                      mc);
         }));
}

void run_hit_laplace(const Options& opt) {
    const ProcessSpec proc = ProcessSpec::stable(opt.model());
    const McConfig mc = opt.mc();
    emit(opt, "hit-laplace", estimate_table(opt, [&](const Point& x) {
             return estimate_hitting_laplace(proc, opt.a, x, opt.lambda, mc);
         }));
}

struct SpectralMeta {
    SpectralData sd;
    ProfileMeta meta;
};

SpectralMeta spectral_meta(const Options& opt) {
    if (opt.d != 1)
        throw std::runtime_error(
            "groundstate estimators require --d 1 (the deterministic solver "
            "is one-dimensional)");
    SpectralData sd =
        spectral_solve_1d(opt.model(), opt.well(), 10.0 * opt.a, 1024);
    ProfileMeta meta{opt.model(), opt.well(), -sd.lambda0(),
                     sd.lambdaR(opt.a)};
    return {std::move(sd), meta};
}

void run_groundstate_mc(const Options& opt) {
    const ProfileMeta meta = spectral_meta(opt).meta;
    const ProcessSpec proc = ProcessSpec::stable(opt.model());
    McConfig mc = opt.mc();
    const std::vector<double> xs =
        opt.x.empty() ? std::vector<double>{0.0, 0.5 * opt.a, 0.9 * opt.a,
                                            1.5 * opt.a, 2.5 * opt.a}
                      : opt.x;
    std::vector<Estimate> est(xs.size());
    std::vector<double> rs, ratios;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mc.seed = {opt.seed, 10 * i};
        est[i] = xs[i] <= opt.a
                     ? fk_ratio_inside(proc, meta, {xs[i], 0, 0}, mc)
                     : fk_ratio_outside(proc, meta, {xs[i], 0, 0}, mc);
        rs.push_back(xs[i]);
        ratios.push_back(est[i].value);
    }
    ProfileBand band{meta, fit_profile_constant(meta, rs, ratios)};
    Table t;
    t.columns = {"r",      "estimate",      "stderr",
                 "branch", "profile_lower", "profile_upper"};
    for (std::size_t i = 0; i < xs.size(); ++i)
        t.add({xs[i], est[i].value, est[i].stderr_,
               xs[i] <= opt.a ? "inside" : "outside", band.lower(xs[i]),
               band.upper(xs[i])});
    emit(opt, "groundstate mc", t);
}

void run_groundstate_profile(const Options& opt) {
    const ProfileMeta meta = spectral_meta(opt).meta;
    ProfileBand band{meta};
    Table t;
    t.columns = {"r", "shape", "profile_lower", "profile_upper"};
    for (double r : default_r_grid(0.0, 5.0 * opt.a, 200))
        t.add({r, band.shape(r), band.lower(r), band.upper(r)});
    emit(opt, "groundstate profile", t);
}

void run_groundstate_moments(const Options& opt) {
    const ProfileMeta meta = spectral_meta(opt).meta;
    const Interval phi_a = phi_at_a(meta);
    Table t;
    t.columns = {"p", "lower", "upper", "diverged"};
    const std::vector<double> ps =
        opt.x.empty() ? default_r_grid(0.5, p_star(opt.model()) + 1.0, 8)
                      : opt.x;
    for (double p : ps) {
        const MomentResult m = moment_lambda_p(meta, phi_a, p);
        t.add({p, m.diverged ? 0.0 : m.band.lo,
               m.diverged ? 0.0 : m.band.hi, m.diverged});
    }
    emit(opt, "groundstate moments", t);
}

void run_groundstate_spectral(const Options& opt) {
    const SpectralData sd = spectral_meta(opt).sd;
    Table t;
    t.columns = {"r", "phi0"};
    t.header = {{"lambda0", sd.lambda0()},
                {"lambdaR", {{"a", sd.lambdaR(opt.a)}}},
                {"grid", {{"L", 10.0 * opt.a}, {"N", 1024}}}};
    for (std::size_t i = 0; i < sd.r_grid().size(); ++i)
        t.add({sd.r_grid()[i], sd.phi()[i]});
    emit(opt, "groundstate spectral", t);
}

void run_groundstate_classical(const Options& opt) {
    Table t;
    t.columns = {"r", "phi0"};
    if (opt.d == 1) {
        const ClassicalGroundState g = classical_groundstate_1d(opt.a, opt.v);
        t.header = {{"lambda0", g.lambda0},
                    {"grid", {{"L", 5.0 * opt.a}, {"N", 200}}}};
        for (double r : default_r_grid(0.0, 5.0 * opt.a, 200))
            t.add({r, g.phi(r)});
    } else if (opt.d >= 3) {
        const ClassicalRadialGroundState g =
            classical_groundstate_radial(opt.a, opt.v, opt.d);
        t.header = {{"lambda0", g.lambda0},
                    {"grid", {{"L", 5.0 * opt.a}, {"N", 200}}}};
        for (double r : default_r_grid(0.0, 5.0 * opt.a, 200))
            t.add({r, g.phi(r)});
    } else {
        throw std::runtime_error(
            "classical oracle implemented for d = 1 and d >= 3 only");
    }
    emit(opt, "groundstate classical", t);
}

int run_verify_cmd(const Options& opt, const std::string& suite) {
    const std::vector<CriterionResult> results =
        run_verify(suite, opt.seed, opt.streams);
    Table t;
    t.columns = {"criterion", "pass", "seconds", "detail"};
    bool all_pass = true;
    for (const auto& r : results) {
        t.add({r.name, r.pass, r.seconds, r.detail});
        all_pass = all_pass && r.pass;
    }
    emit(opt, "verify " + suite, t);
    return all_pass ? 0 : 3;
}

void run_report(const Options& opt) {
    const ModelParams p = opt.model();
    Table t;
    t.columns = {"quantity", "value"};
    t.add({"d", static_cast<double>(p.d)});
    t.add({"alpha", p.alpha});
    t.add({"m", p.m});
    t.add({"well_radius", opt.a});
    t.add({"well_depth", opt.v});
    if (p.m > 0.0) {
        t.add({"total_sigma_mass", total_sigma_mass(p)});
        t.add({"sigma_mass_rel_error",
               std::fabs(total_sigma_mass(p) - p.m) / p.m});
    }
    t.add({"tail_mass_at_a", tail_mass(p, opt.a)});
    t.add({"recurrent",
           classify_recurrence(p) == Recurrence::Recurrent ? 1.0 : 0.0});
    if (p.d == 1) {
        const SpectralMeta sm = spectral_meta(opt);
        const SpectralData& sd = sm.sd;
        const ProfileMeta& meta = sm.meta;
        t.add({"lambda0", sd.lambda0()});
        t.add({"lambda_a", meta.lambda_a});
        t.add({"gap_ok",
               gap_inequality_check(opt.well(), meta.lambda0_abs,
                                    meta.lambda_a)
                   ? 1.0
                   : 0.0});
        t.add({"phi_at_a", sd.phi_at(opt.a)});
        const Interval pa = phi_at_a(meta);
        t.add({"phi_at_a_bound_lo", pa.lo});
        t.add({"phi_at_a_bound_hi", pa.hi});
    }
    emit(opt, "report", t);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Ground states of relativistic Schrodinger operators with potential "
        "wells: Monte-Carlo estimators, deterministic solvers, and "
        "verification suites"};
    app.require_subcommand(1);
    Options opt;
    std::string config_path;
    // The config file must be loaded before CLI11 writes flag values so that
    // explicit flags take precedence; scan argv for it up front.
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config")
                apply_config(argv[i + 1], opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    auto add_common = [&](CLI::App* sub) {
        // --h (time step) would collide with the default -h/--help alias.
        sub->set_help_flag("--help", "print help");
        sub->add_option("--d", opt.d, "dimension (1, 2, or 3)");
        sub->add_option("--alpha", opt.alpha, "stability index in (0, 2)");
        sub->add_option("--m", opt.m, "mass parameter (0 = massless)");
        sub->add_option("--a", opt.a, "well radius");
        sub->add_option("--v", opt.v, "well depth");
        sub->add_option("--x", opt.x, "evaluation points (repeatable)");
        sub->add_option("--lambda", opt.lambda, "exponential weight");
        sub->add_option("--n", opt.n, "number of Monte-Carlo paths");
        sub->add_option("--h", opt.h, "time step");
        sub->add_option("--tmax", opt.tmax, "truncation horizon");
        sub->add_option("--seed", opt.seed, "base RNG seed");
        sub->add_option("--streams", opt.streams, "independent streams");
        sub->add_option("--out", opt.out, "output path or - for stdout");
        sub->add_option("--format", opt.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--plot", opt.plot, "optional SVG figure path");
        sub->add_option("--config", config_path,
                        "key=value file; flags override");
        return sub;
    };

    add_common(app.add_subcommand("density", "jump/sigma density table"));
    add_common(app.add_subcommand("tailmass", "Levy tail mass table"));
    add_common(app.add_subcommand("sample", "raw stopped-path samples"));
    add_common(app.add_subcommand("survival", "exit-time survival P(tau>t)"));
    add_common(
        app.add_subcommand("exit-mgf", "exit-time exponential moments"));
    add_common(app.add_subcommand(
        "hit-laplace", "Laplace transform of the ball hitting time"));
    CLI::App* gs = app.add_subcommand("groundstate",
                                      "ground-state reconstruction");
    gs->require_subcommand(1);
    add_common(gs->add_subcommand("mc", "Feynman-Kac ratio estimates"));
    add_common(gs->add_subcommand("spectral", "deterministic grid solve"));
    add_common(gs->add_subcommand("classical", "Brownian closed forms"));
    add_common(gs->add_subcommand("profile", "closed-form profile band"));
    add_common(gs->add_subcommand("moments", "moment bounds/divergence"));
    CLI::App* verify =
        app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    verify->add_option("suite", suite, "suite name or 'all'")
        ->check(CLI::IsMember([] {
            auto v = verify_suite_names();
            v.push_back("all");
            return v;
        }()));
    add_common(verify);
    add_common(app.add_subcommand("report", "model/solver summary table"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors map to exit 1
    }

    if (const char* env = std::getenv("FW_SEED"))
        opt.seed = std::strtoull(env, nullptr, 10);

    try {
        opt.model().validate();
        if (opt.streams < 1) throw std::invalid_argument("streams >= 1");
        if (app.got_subcommand("density")) run_density(opt, false);
        else if (app.got_subcommand("tailmass")) run_density(opt, true);
        else if (app.got_subcommand("sample")) run_sample(opt);
        else if (app.got_subcommand("survival")) run_survival(opt);
        else if (app.got_subcommand("exit-mgf")) run_exit_mgf(opt);
        else if (app.got_subcommand("hit-laplace")) run_hit_laplace(opt);
        else if (app.got_subcommand("groundstate")) {
            if (gs->got_subcommand("mc")) run_groundstate_mc(opt);
            else if (gs->got_subcommand("spectral"))
                run_groundstate_spectral(opt);
            else if (gs->got_subcommand("classical"))
                run_groundstate_classical(opt);
            else if (gs->got_subcommand("profile"))
                run_groundstate_profile(opt);
            else run_groundstate_moments(opt);
        } else if (app.got_subcommand("verify")) {
            return run_verify_cmd(opt, suite);
        } else if (app.got_subcommand("report")) {
            run_report(opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "pasv/cli.hpp"

#include "pasv/model_io.hpp"
#include "pasv/nearness.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace pasv::cli {

namespace {

int env_grid_points() {
    const char* v = std::getenv("PASSIFY_GRID_POINTS");
    if (!v) return 0;
    const int n = std::atoi(v);
    return n >= 2 ? n : 0;
}

FrequencyGrid make_grid(double wmin, double wmax, int points, bool log_spacing) {
    return log_spacing ? FrequencyGrid::log_spaced_grid(wmin, wmax, points)
                       : FrequencyGrid::lin_spaced_grid(wmin, wmax, points);
}

void write_csv_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write: " + path);
    f << text;
}

struct PassifyOptions {
    std::string model_path;
    std::string method;
    int         steps = 2;
    int         m = 4;
    double      tol = 0.0;
    double      reduce_tol = -1.0;
    std::string out_path;
    std::string report_path;
};

int cmd_passify(const PassifyOptions& opt, std::ostream& out) {
    ModelFile   mf = load_model(opt.model_path);
    Realization h  = mf.realize();

    PassivationResult res;
    if (opt.method == "shift")
        res = shift_passify(h, opt.tol);
    else if (opt.method == "iterate")
        res = passify_iterative(h, opt.steps, opt.tol);
    else if (opt.method == "partfrac")
        res = passify_partfrac(h, opt.m, opt.tol);
    else if (opt.method == "minimax")
        res = passify_minimax(h, MinimaxTable::n4(), opt.tol);
    else
        throw CLI::ValidationError("--method must be shift|iterate|partfrac|minimax");

    if (const int pts = env_grid_points(); pts > 0)
        verify(h, res, make_verification_grid(pts));

    Realization  g = res.G;
    ReduceReport rr;
    bool         reduced = false;
    if (opt.reduce_tol >= 0.0) {
        g       = reduce(res.G, opt.reduce_tol, rr);
        reduced = true;
    }

    const std::string report =
        reduced ? passivation_report_json(res, rr, static_cast<int>(g.states()))
                : passivation_report_json(res);
    out << report;
    if (!opt.report_path.empty()) {
        std::ofstream f(opt.report_path);
        if (!f) throw std::runtime_error("cannot write: " + opt.report_path);
        f << report;
    }
    if (!opt.out_path.empty()) {
        std::string name = mf.name.empty() ? "model" : mf.name;
        save_model(ModelFile::from_realization(g, name + "_" + to_string(res.method)),
                   opt.out_path);
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"passivity analysis and global passive approximation of LTI models"};
    app.require_subcommand(1);

    // check
    auto*       check = app.add_subcommand("check", "classify a model as passive/non-passive");
    std::string check_path;
    double      check_tol = 0.0;
    check->add_option("model", check_path, "model JSON file")->required();
    check->add_option("--tol", check_tol, "dissipation tolerance");

    // dissipation
    auto*       diss = app.add_subcommand("dissipation", "full dissipation report as JSON");
    std::string diss_path;
    double      diss_tol = 0.0;
    diss->add_option("model", diss_path, "model JSON file")->required();
    diss->add_option("--tol", diss_tol, "dissipation tolerance");

    // passify
    auto*          pass = app.add_subcommand("passify", "produce a passive approximation");
    PassifyOptions popt;
    pass->add_option("model", popt.model_path, "model JSON file")->required();
    pass->add_option("--method", popt.method, "shift|iterate|partfrac|minimax")->required();
    pass->add_option("--steps", popt.steps, "iteration count for --method iterate");
    pass->add_option("--m", popt.m, "half pole count for --method partfrac");
    pass->add_option("--tol", popt.tol, "dissipation tolerance");
    pass->add_option("--reduce", popt.reduce_tol, "balanced-truncation threshold");
    pass->add_option("--out", popt.out_path, "write the passivated model here");
    pass->add_option("--report", popt.report_path, "also write the JSON report here");

    // freqresp
    auto*       freq = app.add_subcommand("freqresp", "frequency-response sweep as CSV");
    std::string freq_path, freq_out;
    double      wmin = 1e-4, wmax = 1e6;
    int         points = env_grid_points() > 0 ? env_grid_points() : kDefaultVerifyPoints;
    bool        log_spacing = true, lin_spacing = false;
    freq->add_option("model", freq_path, "model JSON file")->required();
    freq->add_option("--wmin", wmin, "lowest angular frequency");
    freq->add_option("--wmax", wmax, "highest angular frequency");
    freq->add_option("--points", points, "number of grid points");
    freq->add_flag("--log", log_spacing, "logarithmic spacing (default)");
    freq->add_flag("--linear", lin_spacing, "linear spacing");
    freq->add_option("--out", freq_out, "write CSV here instead of stdout");

    // compare
    auto*       comp = app.add_subcommand("compare", "relative error between two models as CSV");
    std::string comp_a, comp_b, comp_out;
    double      cmin = 1e-4, cmax = 1e6;
    int         cpoints = env_grid_points() > 0 ? env_grid_points() : kDefaultVerifyPoints;
    bool        clog = true, clin = false;
    comp->add_option("model1", comp_a, "reference model")->required();
    comp->add_option("model2", comp_b, "compared model")->required();
    comp->add_option("--wmin", cmin, "lowest angular frequency");
    comp->add_option("--wmax", cmax, "highest angular frequency");
    comp->add_option("--points", cpoints, "number of grid points");
    comp->add_flag("--log", clog, "logarithmic spacing (default)");
    comp->add_flag("--linear", clin, "linear spacing");
    comp->add_option("--out", comp_out, "write CSV here instead of stdout");

    // dump-approximant
    auto*  dump = app.add_subcommand("dump-approximant", "print a ramp approximant as JSON");
    int    dump_m = 0;
    double dump_nu = 1.0, dump_a = 0.0, dump_b = 0.0;
    bool   dump_minimax = false;
    dump->add_option("--partfrac-m", dump_m, "zeta partial-fraction family, half pole count");
    dump->add_option("--nu", dump_nu, "scale for the partfrac family");
    dump->add_flag("--minimax", dump_minimax, "minimax family on [-a, b]");
    dump->add_option("--a", dump_a, "left interval endpoint magnitude");
    dump->add_option("--b", dump_b, "right interval endpoint");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed()) {
            Realization h = load_model(check_path).realize();
            const double tol = check_tol > 0.0 ? check_tol : default_dissipation_tol(h);
            DissipationReport rep = classify(h, tol);
            out << "delta_minus = " << rep.delta_minus << "\n";
            out << "delta_plus  = " << rep.delta_plus << "\n";
            out << "classification: " << to_string(rep.classification) << "\n";
            return rep.classification == Classification::passive ? 0 : 1;
        }
        if (diss->parsed()) {
            Realization h = load_model(diss_path).realize();
            const double tol = diss_tol > 0.0 ? diss_tol : default_dissipation_tol(h);
            out << dissipation_report_json(classify(h, tol));
            return 0;
        }
        if (pass->parsed()) return cmd_passify(popt, out);
        if (freq->parsed()) {
            Realization h = load_model(freq_path).realize();
            std::ostringstream csv;
            write_sweep_csv(csv, h, make_grid(wmin, wmax, points, !lin_spacing));
            write_csv_output(freq_out, csv.str(), out);
            return 0;
        }
        if (comp->parsed()) {
            Realization h = load_model(comp_a).realize();
            Realization g = load_model(comp_b).realize();
            std::ostringstream csv;
            write_compare_csv(csv, h, g, make_grid(cmin, cmax, cpoints, !clin));
            write_csv_output(comp_out, csv.str(), out);
            return 0;
        }
        if (dump->parsed()) {
            if (dump_minimax) {
                if (!(dump_a > 0.0) || !(dump_b > 0.0))
                    throw std::invalid_argument("dump-approximant: --minimax needs --a and --b");
                out << approximant_json(minimax_transformed(dump_a, dump_b, MinimaxTable::n4()));
            } else if (dump_m >= 1) {
                out << approximant_json(zeta_partial_fractions(dump_m).scaled(dump_nu));
            } else {
                throw std::invalid_argument(
                    "dump-approximant: pass --partfrac-m M or --minimax --a A --b B");
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

} // namespace pasv::cli

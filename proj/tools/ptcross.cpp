// Command-line front end: one subcommand per computation, CSV or JSON output.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ptcross/run.hpp"

namespace {

struct Subcommand {
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::string format = "csv";
    std::string output;
    bool diagonal = false;
    bool closed = false;
    bool spectral = false;
    bool family = false;
};

const char* describe(ptcross::Command c) {
    using ptcross::Command;
    switch (c) {
    case Command::Spectrum: return "Closed-form and numeric spectrum at one parameter point";
    case Command::Metric: return "Metric family, closed-form, diagonal or spectral metric with its signature";
    case Command::Scan: return "Classify a grid of the (A, B) plane";
    case Command::Sweep: return "Closed-form spectrum along a line of the (A, B) plane";
    case Command::Unfold: return "Perturbative unfolding of the B = 0 exceptional point";
    case Command::HO: return "Harmonic-oscillator reference levels and their crossings";
    case Command::EPFind: return "Locate an exceptional point on a segment by bisection";
    }
    return "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectra, metrics and exceptional points of the four-level PT-symmetric model", "ptcross"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PTCROSS_VERSION);

    std::map<ptcross::Command, Subcommand> subs;
    for (ptcross::Command c : ptcross::all_commands()) {
        Subcommand& s = subs[c];
        s.app = app.add_subcommand(ptcross::to_string(c), describe(c));
        for (const std::string& key : ptcross::allowed_parameters(c)) {
            if (key == "mode") {
                continue;
            }
            s.app->add_option("--" + key, s.values[key]);
        }
        if (c == ptcross::Command::Metric) {
            auto* d = s.app->add_flag("--diagonal", s.diagonal, "Diagonal metric (t1 scale)");
            auto* cl = s.app->add_flag("--closed", s.closed, "Closed-form metric from first row t1..t4");
            auto* sp = s.app->add_flag("--spectral", s.spectral, "Metric from left eigenvectors with --kappa weights");
            auto* fa = s.app->add_flag("--family", s.family, "Basis of all Hermitian solutions (default)");
            d->excludes(cl)->excludes(sp)->excludes(fa);
            cl->excludes(sp)->excludes(fa);
            sp->excludes(fa);
        }
        s.app->add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        s.app->add_option("--output,-o", s.output, "Output file (default: standard output)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (auto& [command, s] : subs) {
        if (!s.app->parsed()) {
            continue;
        }
        ptcross::RunConfig cfg;
        cfg.command = command;
        for (const std::string& key : ptcross::allowed_parameters(command)) {
            if (key != "mode" && s.app->count("--" + key) > 0) {
                cfg.parameters[key] = s.values[key];
            }
        }
        if (s.diagonal) cfg.parameters["mode"] = "diagonal";
        if (s.closed) cfg.parameters["mode"] = "closed";
        if (s.spectral) cfg.parameters["mode"] = "spectral";
        if (s.family) cfg.parameters["mode"] = "family";
        cfg.output_format = ptcross::format_from_string(s.format);
        if (!s.output.empty()) {
            cfg.output_path = s.output;
        }
        cfg.command_line = "ptcross";
        for (int i = 1; i < argc; ++i) {
            cfg.command_line += ' ';
            cfg.command_line += argv[i];
        }
        return ptcross::run_and_emit(cfg, std::cout, std::cerr);
    }
    return 2;
}

#include <functional>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "noonsim/script.hpp"

namespace {

using namespace noonsim;
using cli::Format;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitDomain = 4;

constexpr double kInvSqrt2 = 0.7071067811865475244;

struct Options {
    Format format = Format::csv;
    std::string output_path;  // empty = stdout

    // per-subcommand parameters
    std::string hom_variant;
    double noon4_t2 = 0.5;
    double eta = -1.0;  // negative = unset
    bool pnr = false;
    int subtract_n = 4;
    double subtract_t2 = 0.99;
    std::string eta_grid;
    std::string phi_grid;
    double threshold_target = 0.5;
    std::string script_path;
};

DetectorModel detector_from(const Options& opt) {
    if (opt.eta >= 0.0) return DetectorModel::on_off(opt.eta);
    return DetectorModel::pnr();
}

int with_output(const Options& opt, const std::function<void(std::ostream&)>& emit) {
    if (opt.output_path.empty()) {
        emit(std::cout);
        return kExitOk;
    }
    std::ofstream file(opt.output_path);
    if (!file) {
        std::cerr << "error: cannot open output file '" << opt.output_path << "'\n";
        return kExitUsage;
    }
    emit(file);
    return kExitOk;
}

// grids come from flag values, so malformed ones are usage errors
std::vector<double> grid_or_usage(const std::string& text, const char* flag) {
    try {
        return noonsim::cli::parse_grid(text);
    } catch (const std::invalid_argument& err) {
        throw CLI::ValidationError(flag, err.what());
    }
}

int run_script_command(const Options& opt) {
    std::ifstream file(opt.script_path);
    if (!file) {
        std::cerr << "error: cannot read script '" << opt.script_path << "'\n";
        return kExitUsage;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    CircuitResult result = run_circuit(parse_circuit(buffer.str()));
    return with_output(opt, [&](std::ostream& out) {
        cli::emit_circuit_result(result, opt.format, out);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator for polarization-encoded linear-optical circuits: "
                 "conditional NOON-state generation, lossy heralding and parity metrology"};
    app.require_subcommand(1);
    app.fallthrough();  // --format/--output may follow the subcommand

    Options opt;
    std::map<std::string, Format> format_names{{"csv", Format::csv}, {"json", Format::json}};
    app.add_option("--format", opt.format, "Output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    app.add_option("--output", opt.output_path, "Write data to a file instead of stdout");

    auto* hom = app.add_subcommand("hom", "Deterministic polarization 2002 state");
    hom->add_option("variant", opt.hom_variant, "da or lr")
        ->required()
        ->check(CLI::IsMember({"da", "lr"}));

    auto* noon4_cmd = app.add_subcommand("noon4", "Conditional 4004 generation");
    noon4_cmd->add_option("--t2", opt.noon4_t2, "Beam splitter transmittance t^2")
        ->check(CLI::Range(0.0, 1.0));
    auto* noon4_eta = noon4_cmd->add_option("--eta", opt.eta, "On-off detector efficiency")
                          ->check(CLI::Range(0.0, 1.0));
    noon4_cmd->add_flag("--pnr", opt.pnr, "Number-resolving heralding (default)")
        ->excludes(noon4_eta);

    auto* noon8_cmd = app.add_subcommand("noon8", "8008 cascade from two 4004 stages");
    noon8_cmd->add_option("--eta", opt.eta, "On-off efficiency for the final heralding")
        ->check(CLI::Range(0.0, 1.0));

    auto* subtract_cmd =
        app.add_subcommand("subtract", "Tapped coherent photon subtraction on NOON_n");
    subtract_cmd->add_option("--n", opt.subtract_n, "Input NOON photon number")
        ->check(CLI::Range(2, 12));
    subtract_cmd->add_option("--t2", opt.subtract_t2, "Tap transmittance T^2")
        ->check(CLI::Range(0.0, 1.0));
    subtract_cmd->add_option("--eta-grid", opt.eta_grid, "start:end:step (default 0.05:1:0.05)");

    auto* spdc_cmd = app.add_subcommand("spdc-noonlike",
                                        "Double-pair-source circuit for the 4004-like state");
    spdc_cmd->add_option("--eta", opt.eta, "On-off detector efficiency")
        ->check(CLI::Range(0.0, 1.0));

    auto* metrology_cmd =
        app.add_subcommand("metrology", "Parity fringe and phase sensitivity sweep");
    metrology_cmd->add_option("--eta-grid", opt.eta_grid, "start:end:step (default 0:1:0.05)");
    metrology_cmd->add_option("--phi-grid", opt.phi_grid, "start:end:step (default pi/8)");

    auto* threshold_cmd =
        app.add_subcommand("threshold", "Efficiency where the sensitivity reaches a target");
    threshold_cmd->add_option("--target", opt.threshold_target, "Sensitivity target")
        ->check(CLI::Range(0.25, 0.5));

    auto* fig2_cmd = app.add_subcommand("fig2", "Subtraction fidelity table, N = 2..8");
    fig2_cmd->add_option("--eta-grid", opt.eta_grid, "start:end:step (default 0.05:1:0.05)");
    fig2_cmd->add_option("--t2", opt.subtract_t2, "Tap transmittance T^2")
        ->check(CLI::Range(0.0, 1.0));

    auto* fig4_cmd =
        app.add_subcommand("fig4", "Phase sensitivity and fidelity versus efficiency");
    fig4_cmd->add_option("--eta-grid", opt.eta_grid, "start:end:step (default 0:1:0.01)");

    auto* run_cmd = app.add_subcommand("run", "Parse and execute a circuit script");
    run_cmd->add_option("script", opt.script_path, "Circuit script file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        std::cerr << err.what() << '\n';
        return kExitUsage;
    }

    try {
        auto emit_result = [&](const CircuitResult& result) {
            return with_output(opt, [&](std::ostream& out) {
                cli::emit_circuit_result(result, opt.format, out);
            });
        };

        if (hom->parsed()) {
            return emit_result(
                hom_2002(opt.hom_variant == "da" ? HomVariant::DA : HomVariant::LR));
        }
        if (noon4_cmd->parsed()) {
            double t = std::sqrt(opt.noon4_t2);
            double r = std::sqrt(1.0 - opt.noon4_t2);
            return emit_result(noon4(t, r, detector_from(opt)));
        }
        if (noon8_cmd->parsed()) {
            return emit_result(noon8(detector_from(opt)));
        }
        if (spdc_cmd->parsed()) {
            return emit_result(spdc_noonlike(detector_from(opt)));
        }
        if (subtract_cmd->parsed()) {
            auto etas = grid_or_usage(opt.eta_grid.empty() ? "0.05:1:0.05" : opt.eta_grid, "--eta-grid");
            auto rows = cli::subtract_table(opt.subtract_n, opt.subtract_t2, etas);
            return with_output(
                opt, [&](std::ostream& out) { cli::emit_subtract(rows, opt.format, out); });
        }
        if (metrology_cmd->parsed()) {
            auto etas = grid_or_usage(opt.eta_grid.empty() ? "0:1:0.05" : opt.eta_grid, "--eta-grid");
            auto phis = grid_or_usage(opt.phi_grid.empty() ? "pi/8" : opt.phi_grid, "--phi-grid");
            auto rows = sweep(etas, phis);
            return with_output(
                opt, [&](std::ostream& out) { cli::emit_metrology(rows, opt.format, out); });
        }
        if (threshold_cmd->parsed()) {
            auto row = cli::threshold_row(opt.threshold_target);
            return with_output(
                opt, [&](std::ostream& out) { cli::emit_threshold(row, opt.format, out); });
        }
        if (fig2_cmd->parsed()) {
            auto etas = grid_or_usage(opt.eta_grid.empty() ? "0.05:1:0.05" : opt.eta_grid, "--eta-grid");
            auto rows = cli::fig2_table(etas, opt.subtract_t2);
            return with_output(opt,
                               [&](std::ostream& out) { cli::emit_fig2(rows, opt.format, out); });
        }
        if (fig4_cmd->parsed()) {
            auto etas = grid_or_usage(opt.eta_grid.empty() ? "0:1:0.01" : opt.eta_grid, "--eta-grid");
            auto rows = cli::fig4_table(etas);
            return with_output(opt,
                               [&](std::ostream& out) { cli::emit_fig4(rows, opt.format, out); });
        }
        if (run_cmd->parsed()) {
            return run_script_command(opt);
        }
    } catch (const ParseError& err) {
        std::cerr << "script error at " << err.what() << '\n';
        return kExitParse;
    } catch (const CLI::Error& err) {
        std::cerr << err.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitDomain;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

// agsim: analogue-gravity circuit simulator CLI.
//
// Every subcommand reads a JSON config, runs one experiment and writes its
// CSV/JSON artifacts plus summary.json into the output directory.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "agsim/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw agsim::config_error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"agsim - dc-SQUID lattice horizons and the driven Rabi detector"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> experiments = {
        {"dispersion", "lattice dispersion relation over a wavenumber grid"},
        {"horizon", "analytic horizon track for a moving flux front"},
        {"hawking", "Hawking temperature estimate and profile diagnostics"},
        {"lattice", "time-domain array evolution with snapshots"},
        {"bogoliubov", "pair-production spectrum in the harmonic approximation"},
        {"unruh-evolve", "Lindblad evolution of the driven Rabi model"},
        {"unruh-steady", "periodic steady state and entanglement diagnostics"},
        {"unruh-sweep", "drive-frequency resonance sweep"},
    };

    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    bool verify = false;

    for (const auto& [name, desc] : experiments) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory (default out-<experiment>)");
        sub->add_option("--jobs", jobs, "worker threads for sweep/mode batches");
        sub->add_flag("--verify", verify, "run the invariant suite on the outputs");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string chosen = app.get_subcommands().front()->get_name();

    try {
        const std::string text = read_file(config_path);
        agsim::RunConfig cfg = agsim::parse_config(text);
        if (agsim::to_string(cfg.experiment) != chosen)
            throw agsim::config_error("config experiment '" +
                                      agsim::to_string(cfg.experiment) +
                                      "' does not match subcommand '" + chosen + "'");
        if (out_dir.empty()) out_dir = "out-" + chosen;
        for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
        const auto outcome = agsim::run_experiment(cfg, out_dir, jobs, verify);
        std::cout << "wrote " << outcome.summary_path << "\n";
        return 0;
    } catch (const agsim::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const agsim::domain_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

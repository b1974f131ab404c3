// main.cpp — giantqed command-line entry point
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace giantqed::cli;
    using giantqed::ConfigError;

    CLI::App app{"Bound states and scattering of giant atoms on a tight-binding waveguide"};
    std::string command, config_path, preset, out, format = "csv";
    Overrides ov;
    std::optional<double> tolerance;
    bool force = false, list = false;

    app.add_option("command", command, "bound-states | thresholds | sweep-g | metaband | effective | scattering | wavefunction | oracle-check");
    auto* cfg = app.add_option("--config,-c", config_path, "JSON configuration file");
    auto* pre = app.add_option("--preset,-p", preset, "shipped preset name or JSON path");
    cfg->excludes(pre);
    app.add_option("--out,-o", out, "output file (default stdout)");
    app.add_option("--format,-f", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--grid", ov.grid, "start:stop:count[:log]");
    app.add_option("--axis", ov.axis, "scattering grid axis: k or delta_k");
    app.add_option("--branch", ov.branch, "effective model branch: lower or upper");
    app.add_option("--route", ov.route, "scattering route: matrix, two-atom or lattice");
    app.add_option("--sites", ov.sites, "oracle lattice size");
    app.add_option("--state", ov.state, "wavefunction state index (ascending energy)");
    app.add_option("--tolerance", tolerance, "oracle-check: one tolerance for every comparison");
    app.add_flag("--force", force, "oracle-check: allow lattices above 4000 sites");
    app.add_flag("--list-presets", list, "print the shipped preset names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (list) {
        for (const auto& n : preset_names()) std::cout << n << '\n';
        return kOk;
    }
    try {
        if (command.empty()) throw ConfigError("missing command");
        if (config_path.empty() == preset.empty()) throw ConfigError("give exactly one of --config or --preset");
        Document doc = preset.empty() ? load_document(config_path) : load_preset(preset);
        RunSpec spec = make_spec(command, std::move(doc), ov);
        spec.out = out;
        spec.format = format;
        spec.force = force;
        if (tolerance) {
            if (!(*tolerance > 0.0)) throw ConfigError("--tolerance must be positive");
            spec.tolerances = {*tolerance, *tolerance, *tolerance, *tolerance};
        }
        return run(spec, std::cerr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    }
}

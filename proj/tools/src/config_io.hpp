// config_io.hpp — JSON configuration documents, layouts and sweep grids
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "giantqed/model.hpp"

namespace giantqed::cli {

// Builder shortcut. `kind` (JSON key "preset") is one of single_atom, small_atom,
// {separate,braided,nested}_pair, {separate,braided,nested}_chain, ssh_chain.
struct Layout {
    std::string kind;
    int points = 2;   // n_c, single_atom
    long dn = 1;      // spacing inside an atom
    long dm = 1;      // spacing between atoms
    int atoms = 10;   // n_a, chains
    double g = 1.0;
    double detuning = 0.0;
    double mu = 1.0;  // ssh_chain
    double hopping = 1.0;

    bool is_pair() const;
    bool is_chain() const;
    Topology topology() const;  // SmallAtom for single-atom kinds
};

SystemConfig build(const Layout& layout);
SystemConfig build(const Layout& layout, double g);

// Defaults that a document may carry for the command line.
struct RunDefaults {
    std::optional<std::string> grid;
    std::optional<std::string> axis;
    std::optional<std::string> branch;
    std::optional<std::string> route;
    std::optional<long> sites;
    std::optional<int> state;
};

struct Document {
    std::string comment;
    std::optional<Layout> layout;
    SystemConfig config;
    RunDefaults run;
};

// Throws ConfigError naming the offending field.
Document parse_document(const nlohmann::json& j);
Document load_document(const std::filesystem::path& path);
// Name of a shipped preset, or a path to a JSON file.
Document load_preset(const std::string& name);
// GIANTQED_PRESETS overrides the built-in location.
std::filesystem::path preset_directory();
std::vector<std::string> preset_names();

nlohmann::json to_json(const SystemConfig& config);

struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int count = 2;
    bool log = false;

    std::vector<double> values() const;
};

// start:stop:count[:log]
Grid parse_grid(const std::string& text);

}  // namespace giantqed::cli

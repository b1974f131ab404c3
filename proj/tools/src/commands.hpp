// commands.hpp — command execution for the giantqed tool
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config_io.hpp"
#include "giantqed/correction.hpp"
#include "giantqed/scattering.hpp"

namespace giantqed::cli {

enum ExitCode : int { kOk = 0, kToleranceExceeded = 1, kConfigError = 2, kNumericFailure = 3 };

const std::vector<std::string>& command_names();

struct Tolerances {
    double energy = 1e-6;      // |E_analytic - E_lattice| / J
    double overlap = 1e-4;     // 1 - |<analytic|lattice>|
    double amplitude = 1e-8;   // |t - t'|, |r - r'|
    double unitarity = 1e-10;  // |T + R - 1|
};

struct RunSpec {
    std::string command;
    Document doc;
    std::optional<Grid> grid;
    std::string out;  // empty or "-" writes to stdout
    std::string format = "csv";
    GridAxis axis = GridAxis::WaveVector;
    Branch branch = Branch::Lower;
    Route route = Route::Matrix;
    long sites = 1601;
    bool force = false;
    int state = 0;
    Tolerances tolerances;
    long max_dimension = 4000;  // oracle-check size limit without force
};

// Applies run defaults from the document for fields the caller did not set explicitly.
struct Overrides {
    std::optional<std::string> grid, axis, branch, route;
    std::optional<long> sites;
    std::optional<int> state;
};
RunSpec make_spec(std::string command, Document doc, const Overrides& given);

// Writes the result and returns the exit status; diagnostics go to `log`.
int run(const RunSpec& spec, std::ostream& log);

struct OracleReport {
    long sites = 0;
    std::size_t analytic_states = 0;
    std::size_t lattice_states = 0;
    double max_energy_deviation = 0.0;
    double max_overlap_defect = 0.0;  // 1 - overlap
    std::size_t scattering_points = 0;
    double max_amplitude_deviation = 0.0;
    double max_unitarity_deviation = 0.0;
    double lattice_residual = 0.0;
    std::vector<std::string> notes;
    bool passed = false;
};
OracleReport oracle_check(const RunSpec& spec);

}  // namespace giantqed::cli

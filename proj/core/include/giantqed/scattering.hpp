// scattering.hpp — single-photon transmission and reflection off giant-atom arrays
//
// Rotating frame: omega_k = -2J cos k, atom detunings measured from the band center.
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "giantqed/model.hpp"
#include "giantqed/oracle.hpp"

namespace giantqed {

double group_velocity(double k, double hopping = 1.0);
// sqrt(4J^2 - omega^2), the same quantity written through the photon energy.
double group_velocity_from_energy(double omega, double hopping = 1.0);
double photon_energy(double k, double hopping = 1.0);

// Complex symmetric (not Hermitian) atom-space Hamiltonian at wave vector k.
Eigen::MatrixXcd effective_hamiltonian(const SystemConfig& config, double k);
// Matrix resolvent route; any atom count.
Amplitudes amplitudes(const SystemConfig& config, double k);
// Closed expression for two atoms with two points each.
Amplitudes two_atom_amplitudes(const SystemConfig& config, double k);

enum class Route { Matrix, TwoAtom, Lattice };
Amplitudes amplitudes(const SystemConfig& config, double k, Route route);

struct ScatteringPoint {
    double k = 0.0;
    double omega = 0.0;
    double detuning = 0.0;  // omega - reference atomic frequency
    std::complex<double> t;
    std::complex<double> r;
    double T = 0.0;
    double R = 0.0;
    std::optional<std::string> error;
};

enum class GridAxis { WaveVector, Detuning };

struct Sweep {
    std::vector<ScatteringPoint> points;
    std::vector<std::string> notices;
};

// Detuning-axis values outside the band are skipped with a notice; per-point failures are
// recorded and the sweep continues. The reference frequency is atom 0's detuning.
Sweep reflectance_sweep(const SystemConfig& config, const std::vector<double>& grid, GridAxis axis,
                        Route route = Route::Matrix);

struct CharacteristicQuantities {
    double k_atom = 0.0;       // wave vector resonant with the atoms
    double gamma = 0.0;        // 2 g^2 / v_g
    double phase = 0.0;        // k_atom * dm
    double delay = 0.0;        // dm / v_g
    double markov_ratio = 0.0;      // gamma * delay
    double markov_coupling = 0.0;   // sqrt(2/dm) sin k_atom, compare with g/J
    double long_wavelength_bound = 0.0;  // k_atom^{3/2}, compare with g/J
    bool tabulated = false;    // false: only the rate/phase fields are filled
    double lamb_shift_a = 0.0, lamb_shift_b = 0.0;
    double decay_a = 0.0, decay_b = 0.0;
    double exchange = 0.0;
    double collective_decay = 0.0;
};

// Symmetric layouts only (dn = dm separate/nested, dn = 2 dm braided); detuning in (-2J, 2J).
CharacteristicQuantities characteristic_quantities(Topology topology, long dm, double g, double detuning,
                                                   double hopping = 1.0);

// ---- line-shape helpers on sampled curves ----

struct Extremum {
    std::size_t index = 0;  // grid sample
    double position = 0.0;  // quadratic refinement
    double value = 0.0;
};

std::vector<Extremum> local_maxima(const std::vector<double>& x, const std::vector<double>& y, double min_value = 0.0);
std::vector<Extremum> local_minima(const std::vector<double>& x, const std::vector<double>& y);
// Full width at half of y[peak] from interpolated crossings; empty if a side never drops.
std::optional<double> full_width_half_max(const std::vector<double>& x, const std::vector<double>& y, std::size_t peak);

}  // namespace giantqed

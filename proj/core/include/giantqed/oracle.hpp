// oracle.hpp — finite-lattice ground truth: direct diagonalization and a plane-wave matching solver
//
// Nothing here uses the closed-form corrections; it only builds and solves the lattice problem.
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "giantqed/boundstates.hpp"
#include "giantqed/model.hpp"

namespace giantqed {

struct LatticeHamiltonian {
    long n_sites = 0;
    std::size_t n_atoms = 0;
    long site_offset = 0;  // config site j sits at lattice index j + site_offset
    Eigen::MatrixXd matrix;  // photons first, atoms appended
    std::vector<std::string> warnings;

    Eigen::Index dimension() const { return matrix.rows(); }
};

struct OracleResult {
    std::vector<double> eigenvalues;  // ascending
    std::optional<Eigen::MatrixXd> eigenvectors;
    double residual = 0.0;  // max |H v - E v|
};

// Coupling pattern centered in [0, n_sites) unless centered is false (then offset = -min_site).
LatticeHamiltonian build_matrix(const SystemConfig& config, long n_sites, bool centered = true);

// Full spectrum (Eigen self-adjoint solver); meant for small lattices.
OracleResult diagonalize(const LatticeHamiltonian& h, bool with_vectors);
// Eigenpairs with |E| > energy_cut only. Narrow coupling patterns are reordered into a band matrix
// (band bisection + inverse iteration); wide ones use tridiagonal reduction + MRRR.
OracleResult diagonalize_outside(const LatticeHamiltonian& h, double energy_cut);

struct ExactBoundState {
    double energy = 0.0;
    Eigen::VectorXd atomic_amplitudes;  // not renormalized: their norm is cos(theta)
    PhotonProfile photonic_profile;     // in config site coordinates
    double residual = 0.0;
};

// States with |E| > 2J(1 + 10/n_sites), gauge fixed like the analytic solvers.
std::vector<ExactBoundState> bound_states_exact(const SystemConfig& config, long n_sites);

struct Amplitudes {
    std::complex<double> t;
    std::complex<double> r;
};

// Exact single-photon transmission/reflection of an infinite waveguide, from the matching
// conditions at every coupling site. Throws NumericError when the system is singular.
Amplitudes scattering_exact(const SystemConfig& config, double k);

}  // namespace giantqed

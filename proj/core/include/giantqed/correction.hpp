// correction.hpp — localization length and energy-correction (self/mutual) functions
//
// All energies in units of the hopping J, rotating frame (band = [-2, 2]).
#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "giantqed/model.hpp"

namespace giantqed {

enum class Branch : int { Lower = -1, Upper = 1 };

inline int sign_of(Branch b) { return static_cast<int>(b); }
inline Branch branch_of(double energy) { return energy > 0 ? Branch::Upper : Branch::Lower; }
const char* to_string(Branch b);

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Smallest |E| callers should evaluate at: 2 (1 + 1e-12).
inline constexpr double kEdgeGuard = 1e-12;

// 1 / arccosh(|E|/2); requires |E| > 2.
double localization_length(double energy);
// exp(-1/lambda) = 1/(|E|/2 + sqrt(E^2/4 - 1)), evaluated without cancellation.
double decay_factor(double energy);
// E sqrt(1 - 4/E^2) = sign(E) sqrt((E-2)(E+2)).
double edge_denominator(double energy);

// Element (m, m2) of the correction matrix; sign(E) must equal the branch.
double sigma_element(const SystemConfig& config, std::size_t m, std::size_t m2, double energy,
                     Branch branch);
Eigen::MatrixXd correction_matrix(const SystemConfig& config, double energy, Branch branch);
// Derivative of the correction matrix with respect to E.
Eigen::MatrixXd correction_matrix_derivative(const SystemConfig& config, double energy, Branch branch);

// (1/2pi) sum g g' int_{-pi}^{pi} e^{ik(n-n')}/(E + 2 cos k) dk by adaptive quadrature.
double sigma_integral(const SystemConfig& config, std::size_t m, std::size_t m2, double energy);

// Equal strength, equally spaced single atom.
double self_energy_single(int n_points, long spacing, double g, double energy, Branch branch);

struct PairEnergies {
    double self_a = 0.0;
    double self_b = 0.0;
    double mutual = 0.0;
};
// Closed forms for the symmetric two-atom layouts of build_two_atoms.
PairEnergies pair_energies(Topology topology, long dn, long dm, double g, double energy, Branch branch);

// Closed-form infinite-chain correction for border label `border` = +-1.
double chain_limit_sigma(Topology topology, long dn, long dm, double g, double energy, Branch branch,
                         int border);

// ---- exact band-edge limits (E -> +-2 on the given branch) ----

// lim u^T Sigma(E) u; +-infinity when divergent.
double edge_limit_form(const SystemConfig& config, const Eigen::VectorXd& u, Branch branch);

struct EdgeSpectrum {
    // Sorted ascending limits of the eigenvalues of diag(detuning) + Sigma(E) - E.
    // At most one entry is infinite (+inf on the upper branch, -inf on the lower).
    std::vector<double> limits;
};
EdgeSpectrum edge_limit_spectrum(const SystemConfig& config, Branch branch);

double self_energy_single_edge(int n_points, long spacing, double g, Branch branch);
// Edge limit of chain_limit_sigma, from the order of each vanishing factor.
double chain_limit_edge(Topology topology, long dn, long dm, double g, Branch branch, int border);

}  // namespace giantqed

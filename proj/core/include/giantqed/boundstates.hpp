// boundstates.hpp — atom-photon bound states, wavefunctions, thresholds, metaband borders
//
// Energies are in units of the hopping J and measured from the band center.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "giantqed/correction.hpp"
#include "giantqed/model.hpp"

namespace giantqed {

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LabelKind { None, Parity, Sign, Border, Index };
const char* to_string(LabelKind k);

struct StateLabel {
    LabelKind kind = LabelKind::None;
    int value = 0;  // alpha, eta, gamma (+-1) or branch index
};

struct PhotonProfile {
    long first_site = 0;
    std::vector<double> amplitudes;  // beta sin(theta) f_j, consecutive sites
    bool capped = false;             // window hit the size cap before the tail cutoff

    long last_site() const { return first_site + static_cast<long>(amplitudes.size()) - 1; }
    double at(long site) const;
};

struct BoundState {
    Branch branch = Branch::Lower;
    double energy = 0.0;
    double mixing_angle = 0.0;
    Eigen::VectorXd atomic_amplitudes;  // real, unit norm, first nonzero entry positive
    PhotonProfile photonic_profile;
    double localization_length = 0.0;
    double normalization = 0.0;  // the N constant of the photonic amplitude
    StateLabel label;
    bool near_degenerate = false;
    double residual = 0.0;  // |det(diag(delta)+Sigma-E)| / scale at the root
};

struct SolveOptions {
    bool with_profiles = true;
    double degeneracy_gap = 1e-8;
    long max_window = 200'000;  // profile half-width cap (sites)
};

std::vector<BoundState> solve_single_atom(const SystemConfig& config, const SolveOptions& opt = {});
std::vector<BoundState> solve_two_atoms(const SystemConfig& config, const SolveOptions& opt = {});
std::vector<BoundState> solve_general(const SystemConfig& config, const SolveOptions& opt = {});
// States of one branch, ascending energy.
std::vector<BoundState> solve_branch(const SystemConfig& config, Branch branch, const SolveOptions& opt = {});

// Complete dressed state from an energy and atomic amplitudes.
BoundState assemble_wavefunction(const SystemConfig& config, double energy, Branch branch,
                                 const Eigen::VectorXd& u, long max_window = 200'000);

// Whether an upper/lower state of the single equal-strength atom exists, by the edge limit.
bool single_atom_state_exists(int n_points, long spacing, double g, double detuning, Branch branch);

// Leading strong-coupling energy delta/2 + beta sqrt(delta^2 + 4 G2)/2, G2 = sum of squared strengths.
double strong_coupling_energy(double sum_sq_strength, double detuning, Branch branch);

// ---- threshold case tables ----

enum class Family { SingleAtom, Pair, Chain };

struct ThresholdReport {
    Branch branch = Branch::Lower;
    StateLabel label;
    bool exists_always = false;
    std::optional<double> threshold_g;  // state exists for g above this value
    std::string formula_id;
    bool uncovered = false;
    bool approximate = false;
    std::string note;
};

struct ThresholdSummary {
    std::vector<ThresholdReport> reports;
    // braided pair, odd dn > 2 dm: degeneracy point of the two upper states
    std::optional<double> crossing_energy;
    std::optional<double> crossing_coupling;
};

// count = number of points (single atom) or ignored otherwise.
ThresholdSummary thresholds(Family family, Topology topology, int count, long dn, long dm, double delta);

// Root E > 2 of exp((dn-2dm) s) + exp(-dn s) = 2 with E = 2 cosh s (dn > 2dm).
double braided_crossing_energy(long dn, long dm);
// Coupling at which the two upper braided states meet at the crossing energy.
double braided_crossing_coupling(long dn, long dm, double delta);

// ---- metaband borders (infinite chain) ----

struct Border {
    int label = 0;  // gamma
    double energy = 0.0;
};

struct MetabandBorders {
    Branch branch = Branch::Lower;
    std::vector<Border> borders;  // ascending energy
    bool partially_merged = false;  // fewer than two borders exist
    bool approximate = false;       // braided: borders only approximate
    std::vector<ThresholdReport> thresholds;
};

MetabandBorders metaband_borders(Topology topology, long dn, long dm, double g, double delta, Branch branch);

}  // namespace giantqed

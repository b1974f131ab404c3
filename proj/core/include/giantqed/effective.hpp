// effective.hpp — strong-coupling dressed-atom models: pair couplings, uniform and SSH chains
//
// Approximate by construction; never used implicitly by the exact solvers.
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "giantqed/correction.hpp"
#include "giantqed/model.hpp"

namespace giantqed {

// Signed coupling between two dressed atoms (zero detuning, g in units of J), J = 1.
double dipole_coupling(Topology topology, long dn, long dm, double g, Branch branch);
// Intra-cell and inter-cell couplings of the alternating chain, signed like dipole_coupling.
std::pair<double, double> ssh_couplings(long dm, double g, double mu, Branch branch);

struct EffectiveChain {
    double dressed_energy = 0.0;
    std::vector<double> hoppings;  // bond i couples atoms i and i+1

    std::size_t size() const { return hoppings.size() + 1; }
    bool alternating() const;
};

// Centers come from the exact single-atom bound state of the repeated atom.
EffectiveChain uniform_chain(Topology topology, int n_atoms, long dn, long dm, double g, Branch branch);
EffectiveChain ssh_chain(int n_atoms, long dn, long dm, double g, double mu, Branch branch);

struct ChainSpectrum {
    Eigen::VectorXd energies;  // ascending
    Eigen::MatrixXd vectors;   // columns, first nonzero entry positive
};

ChainSpectrum chain_spectrum(const EffectiveChain& chain);
// Periodic chain bands at wave vectors K: one row per K, one column per band (1 or 2).
Eigen::MatrixXd chain_dispersion(const EffectiveChain& chain, const std::vector<double>& wave_vectors);

struct EdgeState {
    double energy = 0.0;
    double edge_weight = 0.0;  // probability on the first and last unit cell
    std::size_t index = 0;     // column in the open-chain spectrum
};

struct MetabandModel {
    double center = 0.0;
    double width = 0.0;
    double gap = 0.0;
    std::vector<EdgeState> edge_states;
};

// Width/gap from the periodic bands; edge states from the open chain (inside 25% of the gap).
MetabandModel analyze_metaband(const EffectiveChain& chain);

}  // namespace giantqed

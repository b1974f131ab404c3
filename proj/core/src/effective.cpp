// effective.cpp — dressed-atom couplings and tight-binding chains
#include "giantqed/effective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "giantqed/boundstates.hpp"

namespace giantqed {

namespace {

// (-1)^dm beta^(dm+1)
double coupling_sign(long dm, Branch branch) {
    const double parity_dm = dm % 2 == 0 ? 1.0 : -1.0;
    const double beta_pow = (sign_of(branch) == -1 && (dm + 1) % 2 != 0) ? -1.0 : 1.0;
    return parity_dm * beta_pow;
}

double dressed_energy(const AtomSpec& atom, Branch branch) {
    SystemConfig c;
    c.atoms.push_back(atom);
    const auto min_site = atom.points.front().site;
    for (auto& p : c.atoms[0].points) p.site -= min_site;
    SolveOptions opt;
    opt.with_profiles = false;
    for (const auto& s : solve_single_atom(c, opt))
        if (s.branch == branch) return s.energy;
    throw NumericError("the repeated atom has no bound state on this branch");
}

}  // namespace

double dipole_coupling(Topology topology, long dn, long dm, double g, Branch branch) {
    if (dn < 1 || dm < 1 || !(g > 0.0)) throw std::invalid_argument("need positive spacings and coupling");
    const double s = coupling_sign(dm, branch);
    const double root2g = std::sqrt(2.0) * g;
    switch (topology) {
        case Topology::Separate:
            return 0.5 * s * std::pow(root2g, 1.0 - static_cast<double>(dm));
        case Topology::Braided:
            if (dn > 2 * dm) return 0.5 * s * std::pow(root2g, 1.0 - static_cast<double>(dm));
            if (dn < 2 * dm) return s * std::pow(root2g, 1.0 - static_cast<double>(dn - dm));
            return 1.5 * s * std::pow(root2g, 1.0 - static_cast<double>(dm));
        case Topology::Nested:
            return s * std::pow(root2g, 1.0 - static_cast<double>(dm));
        case Topology::SmallAtom:
            break;
    }
    throw std::invalid_argument("dipole coupling needs separate, braided or nested");
}

std::pair<double, double> ssh_couplings(long dm, double g, double mu, Branch branch) {
    if (dm < 1 || !(g > 0.0) || !(mu > 0.0)) throw std::invalid_argument("need positive spacing, coupling and ratio");
    const double s = coupling_sign(dm, branch);
    const double base = std::pow(g, 1.0 - static_cast<double>(dm)) / std::pow(1.0 + mu * mu, 0.5 * static_cast<double>(dm + 1));
    return {s * mu * mu * base, s * base};
}

bool EffectiveChain::alternating() const {
    for (std::size_t i = 2; i < hoppings.size(); ++i)
        if (hoppings[i] != hoppings[i - 2]) return false;
    return hoppings.size() >= 2 && hoppings[0] != hoppings[1];
}

EffectiveChain uniform_chain(Topology topology, int n_atoms, long dn, long dm, double g, Branch branch) {
    if (n_atoms < 1) throw std::invalid_argument("chain needs atoms");
    EffectiveChain c;
    c.dressed_energy = dressed_energy(AtomSpec{0.0, {{0, g}, {dn, g}}}, branch);
    c.hoppings.assign(static_cast<std::size_t>(n_atoms - 1), 0.5 * dipole_coupling(topology, dn, dm, g, branch));
    return c;
}

EffectiveChain ssh_chain(int n_atoms, long dn, long dm, double g, double mu, Branch branch) {
    if (n_atoms < 2 || n_atoms % 2 != 0) throw std::invalid_argument("SSH chain needs an even atom count");
    EffectiveChain c;
    c.dressed_energy = dressed_energy(AtomSpec{0.0, {{0, g}, {dn, mu * g}}}, branch);
    const auto [intra, inter] = ssh_couplings(dm, g, mu, branch);
    for (int i = 0; i + 1 < n_atoms; ++i) c.hoppings.push_back(0.5 * (i % 2 == 0 ? intra : inter));
    return c;
}

ChainSpectrum chain_spectrum(const EffectiveChain& chain) {
    const auto n = static_cast<Eigen::Index>(chain.size());
    Eigen::MatrixXd H = chain.dressed_energy * Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) H(i, i + 1) = H(i + 1, i) = chain.hoppings[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    ChainSpectrum out{es.eigenvalues(), es.eigenvectors()};
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(out.vectors(i, c)) > 1e-10) {
                if (out.vectors(i, c) < 0) out.vectors.col(c) *= -1.0;
                break;
            }
    return out;
}

Eigen::MatrixXd chain_dispersion(const EffectiveChain& chain, const std::vector<double>& wave_vectors) {
    if (chain.hoppings.empty()) throw std::invalid_argument("dispersion needs at least one bond");
    const auto nk = static_cast<Eigen::Index>(wave_vectors.size());
    const double e0 = chain.dressed_energy;
    if (!chain.alternating()) {
        Eigen::MatrixXd out(nk, 1);
        for (Eigen::Index q = 0; q < nk; ++q) out(q, 0) = e0 + 2.0 * chain.hoppings[0] * std::cos(wave_vectors[static_cast<std::size_t>(q)]);
        return out;
    }
    // hoppings are half the couplings: E +- (1/2) sqrt(U1^2 + U2^2 + 2 U1 U2 cos K)
    const double u1 = 2.0 * chain.hoppings[0], u2 = 2.0 * chain.hoppings[1];
    Eigen::MatrixXd out(nk, 2);
    for (Eigen::Index q = 0; q < nk; ++q) {
        const double r = 0.5 * std::sqrt(std::max(0.0, u1 * u1 + u2 * u2 + 2.0 * u1 * u2 * std::cos(wave_vectors[static_cast<std::size_t>(q)])));
        out(q, 0) = e0 - r;
        out(q, 1) = e0 + r;
    }
    return out;
}

MetabandModel analyze_metaband(const EffectiveChain& chain) {
    MetabandModel m;
    m.center = chain.dressed_energy;
    if (chain.hoppings.empty()) return m;
    if (!chain.alternating()) {
        m.width = 4.0 * std::abs(chain.hoppings[0]);
        return m;
    }
    const double a = 2.0 * std::abs(chain.hoppings[0]), b = 2.0 * std::abs(chain.hoppings[1]);
    m.width = a + b;
    m.gap = std::abs(a - b);
    if (!(m.gap > 0.0)) return m;

    const ChainSpectrum sp = chain_spectrum(chain);
    const auto n = sp.energies.size();
    for (Eigen::Index c = 0; c < n; ++c) {
        const double e = sp.energies(c);
        if (!(std::abs(e - m.center) < 0.25 * m.gap)) continue;
        const auto& v = sp.vectors.col(c);
        double w = 0.0;
        for (Eigen::Index i : {Eigen::Index{0}, Eigen::Index{1}, n - 2, n - 1}) w += v(i) * v(i);
        if (n < 4) w = 1.0;
        m.edge_states.push_back({e, w, static_cast<std::size_t>(c)});
    }
    return m;
}

}  // namespace giantqed

// model.hpp — waveguide + giant-atom configurations and layout builders
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace giantqed {

// Tight-binding waveguide, dispersion omega_k = band_center - 2 hopping cos k.
struct WaveguideParams {
    double band_center = 0.0;  // kept for labelling only
    double hopping = 1.0;
};

struct CouplingPoint {
    long site = 0;
    double strength = 0.0;
};

struct AtomSpec {
    double detuning = 0.0;  // transition frequency minus band center
    std::vector<CouplingPoint> points;
};

struct SystemConfig {
    WaveguideParams waveguide;
    std::vector<AtomSpec> atoms;

    std::size_t atom_count() const { return atoms.size(); }
    std::size_t point_count() const;
    long min_site() const;
    long max_site() const;
    // largest per-atom sum of strengths
    double max_total_coupling() const;
};

enum class Topology { Separate, Braided, Nested, SmallAtom };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& name);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PointRef {
    std::size_t atom;
    std::size_t point;
};

struct Violation {
    std::string message;
    std::vector<PointRef> where;
};

// Empty iff every structural invariant holds. Zero strengths are not violations.
std::vector<Violation> validate(const SystemConfig& config);
// Non-fatal remarks (decoupled points).
std::vector<std::string> warnings(const SystemConfig& config);
// Throws ConfigError listing all violations.
void require_valid(const SystemConfig& config);

SystemConfig build_single_atom(int n_points, long spacing, double g, double detuning);
SystemConfig build_two_atoms(Topology topology, long dn, long dm, double g, double detuning);
SystemConfig build_chain(Topology topology, int n_atoms, long dn, long dm, double g, double detuning);
// Separate-chain layout, strengths (g, mu g) on A atoms and (mu g, g) on B atoms.
SystemConfig build_ssh_chain(int n_atoms, long dn, long dm, double g, double mu, double detuning);

SystemConfig translated(const SystemConfig& config, long shift);
// Mirror image j -> min + max - j; atom order kept, points re-sorted.
SystemConfig reflected(const SystemConfig& config);
// Energies rescaled to units of the hopping (hopping becomes 1).
SystemConfig in_hopping_units(const SystemConfig& config);

// Atom permutation p such that reflecting maps atom m onto atom p[m]
// (same sites, strengths and detuning). Empty when no such symmetry.
std::optional<std::vector<std::size_t>> reflection_permutation(const SystemConfig& config,
                                                               double tol = 1e-12);

// Interleaving pattern of two two-point atoms. SmallAtom if either has one point;
// empty for patterns outside the three families.
std::optional<Topology> classify_pair(const AtomSpec& a, const AtomSpec& b);

}  // namespace giantqed

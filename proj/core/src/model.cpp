// model.cpp — configuration validation and layout builders
#include "giantqed/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace giantqed {

std::size_t SystemConfig::point_count() const {
    std::size_t n = 0;
    for (const auto& a : atoms) n += a.points.size();
    return n;
}

long SystemConfig::min_site() const {
    long lo = 0;
    bool first = true;
    for (const auto& a : atoms)
        for (const auto& p : a.points) {
            if (first || p.site < lo) lo = p.site;
            first = false;
        }
    return lo;
}

long SystemConfig::max_site() const {
    long hi = 0;
    bool first = true;
    for (const auto& a : atoms)
        for (const auto& p : a.points) {
            if (first || p.site > hi) hi = p.site;
            first = false;
        }
    return hi;
}

double SystemConfig::max_total_coupling() const {
    double best = 0.0;
    for (const auto& a : atoms) {
        double s = 0.0;
        for (const auto& p : a.points) s += std::abs(p.strength);
        best = std::max(best, s);
    }
    return best;
}

std::string to_string(Topology t) {
    switch (t) {
        case Topology::Separate: return "separate";
        case Topology::Braided: return "braided";
        case Topology::Nested: return "nested";
        case Topology::SmallAtom: return "small";
    }
    return "unknown";
}

Topology topology_from_string(const std::string& name) {
    if (name == "separate") return Topology::Separate;
    if (name == "braided") return Topology::Braided;
    if (name == "nested") return Topology::Nested;
    if (name == "small" || name == "small_atom") return Topology::SmallAtom;
    throw ConfigError("unknown topology '" + name + "'");
}

std::vector<Violation> validate(const SystemConfig& config) {
    std::vector<Violation> out;
    const auto& wg = config.waveguide;
    if (!(wg.hopping > 0.0) || !std::isfinite(wg.hopping))
        out.push_back({"waveguide hopping must be positive and finite", {}});
    if (!std::isfinite(wg.band_center))
        out.push_back({"waveguide band center must be finite", {}});
    if (config.atoms.empty()) out.push_back({"configuration has no atoms", {}});

    std::map<long, PointRef> owner;
    for (std::size_t m = 0; m < config.atoms.size(); ++m) {
        const auto& atom = config.atoms[m];
        if (!std::isfinite(atom.detuning)) {
            out.push_back({"atom " + std::to_string(m) + ": detuning must be finite", {}});
        }
        if (atom.points.empty()) {
            out.push_back({"atom " + std::to_string(m) + " has no coupling points", {}});
            continue;
        }
        for (std::size_t l = 0; l < atom.points.size(); ++l) {
            const auto& p = atom.points[l];
            const std::string tag = "atom " + std::to_string(m) + " point " + std::to_string(l);
            if (!std::isfinite(p.strength) || p.strength < 0.0)
                out.push_back({tag + ": strength must be finite and >= 0", {{m, l}}});
            if (l > 0 && p.site <= atom.points[l - 1].site)
                out.push_back({tag + ": sites must be strictly ascending within an atom",
                               {{m, l - 1}, {m, l}}});
            auto [it, fresh] = owner.emplace(p.site, PointRef{m, l});
            if (!fresh && it->second.atom != m) {
                std::ostringstream os;
                os << "site " << p.site << " shared by atom " << it->second.atom << " point "
                   << it->second.point << " and " << tag;
                out.push_back({os.str(), {it->second, {m, l}}});
            }
        }
    }
    return out;
}

std::vector<std::string> warnings(const SystemConfig& config) {
    std::vector<std::string> out;
    for (std::size_t m = 0; m < config.atoms.size(); ++m)
        for (std::size_t l = 0; l < config.atoms[m].points.size(); ++l)
            if (config.atoms[m].points[l].strength == 0.0)
                out.push_back("atom " + std::to_string(m) + " point " + std::to_string(l) +
                              " is decoupled (zero strength)");
    return out;
}

void require_valid(const SystemConfig& config) {
    auto v = validate(config);
    if (v.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& x : v) msg += "\n  " + x.message;
    throw ConfigError(msg);
}

namespace {

AtomSpec two_point_atom(long s1, long s2, double g1, double g2, double detuning) {
    AtomSpec a;
    a.detuning = detuning;
    a.points = {{s1, g1}, {s2, g2}};
    return a;
}

void check_common(long dn, long dm, double g) {
    if (dn < 1) throw ConfigError("delta_n must be >= 1");
    if (dm < 1) throw ConfigError("delta_m must be >= 1");
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("coupling g must be finite and >= 0");
}

SystemConfig normalized(SystemConfig c) {
    const long lo = c.min_site();
    c = translated(c, -lo);
    require_valid(c);
    return c;
}

}  // namespace

SystemConfig build_single_atom(int n_points, long spacing, double g, double detuning) {
    if (n_points < 1) throw ConfigError("number of coupling points must be >= 1");
    if (spacing < 1) throw ConfigError("point spacing must be >= 1");
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("coupling g must be finite and >= 0");
    SystemConfig c;
    AtomSpec a;
    a.detuning = detuning;
    for (int l = 0; l < n_points; ++l) a.points.push_back({l * spacing, g});
    c.atoms.push_back(a);
    return normalized(c);
}

SystemConfig build_two_atoms(Topology topology, long dn, long dm, double g, double detuning) {
    check_common(dn, dm, g);
    SystemConfig c;
    switch (topology) {
        case Topology::Separate:
            c.atoms.push_back(two_point_atom(0, dn, g, g, detuning));
            c.atoms.push_back(two_point_atom(dn + dm, 2 * dn + dm, g, g, detuning));
            break;
        case Topology::Braided:
            if (dn <= dm) throw ConfigError("braided pair requires delta_n > delta_m");
            c.atoms.push_back(two_point_atom(0, dn, g, g, detuning));
            c.atoms.push_back(two_point_atom(dn - dm, 2 * dn - dm, g, g, detuning));
            break;
        case Topology::Nested:
            c.atoms.push_back(two_point_atom(0, dn + 2 * dm, g, g, detuning));
            c.atoms.push_back(two_point_atom(dm, dm + dn, g, g, detuning));
            break;
        case Topology::SmallAtom:
            throw ConfigError("two-atom builder needs separate, braided or nested");
    }
    return normalized(c);
}

SystemConfig build_chain(Topology topology, int n_atoms, long dn, long dm, double g,
                         double detuning) {
    check_common(dn, dm, g);
    if (n_atoms < 2) throw ConfigError("chain needs at least 2 atoms");
    SystemConfig c;
    switch (topology) {
        case Topology::Separate:
            for (int p = 0; p < n_atoms; ++p) {
                const long s = p * (dn + dm);
                c.atoms.push_back(two_point_atom(s, s + dn, g, g, detuning));
            }
            break;
        case Topology::Braided:
            if (dn <= 2 * dm) throw ConfigError("braided chain requires delta_n > 2 delta_m");
            for (int p = 0; p < n_atoms; ++p) {
                const long s = p * (dn - dm);
                c.atoms.push_back(two_point_atom(s, s + dn, g, g, detuning));
            }
            break;
        case Topology::Nested: {
            // concentric: atom q (0 = outermost) at center +- (dn/2 + (n-1-q) dm), doubled units
            for (int q = 0; q < n_atoms; ++q) {
                const long half = dn + 2 * (n_atoms - 1 - q) * dm;
                c.atoms.push_back(two_point_atom(-half, half, g, g, detuning));
            }
            const long lo = c.min_site();
            for (auto& a : c.atoms)
                for (auto& p : a.points) p.site = (p.site - lo) / 2;
            break;
        }
        case Topology::SmallAtom:
            throw ConfigError("chain builder needs separate, braided or nested");
    }
    return normalized(c);
}

SystemConfig build_ssh_chain(int n_atoms, long dn, long dm, double g, double mu, double detuning) {
    check_common(dn, dm, g);
    if (n_atoms < 2 || n_atoms % 2 != 0) throw ConfigError("SSH chain needs an even atom count >= 2");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("SSH ratio mu must be positive");
    SystemConfig c;
    for (int p = 0; p < n_atoms; ++p) {
        const long s = p * (dn + dm);
        const bool a_site = (p % 2 == 0);
        c.atoms.push_back(two_point_atom(s, s + dn, a_site ? g : mu * g, a_site ? mu * g : g, detuning));
    }
    return normalized(c);
}

SystemConfig translated(const SystemConfig& config, long shift) {
    SystemConfig c = config;
    for (auto& a : c.atoms)
        for (auto& p : a.points) p.site += shift;
    return c;
}

SystemConfig reflected(const SystemConfig& config) {
    SystemConfig c = config;
    const long lo = config.min_site(), hi = config.max_site();
    for (auto& a : c.atoms) {
        for (auto& p : a.points) p.site = lo + hi - p.site;
        std::reverse(a.points.begin(), a.points.end());
    }
    return c;
}

SystemConfig in_hopping_units(const SystemConfig& config) {
    SystemConfig c = config;
    const double J = config.waveguide.hopping;
    c.waveguide.hopping = 1.0;
    c.waveguide.band_center = config.waveguide.band_center / J;
    for (auto& a : c.atoms) {
        a.detuning /= J;
        for (auto& p : a.points) p.strength /= J;
    }
    return c;
}

std::optional<std::vector<std::size_t>> reflection_permutation(const SystemConfig& config,
                                                               double tol) {
    const SystemConfig r = reflected(config);
    const std::size_t n = config.atoms.size();
    std::vector<std::size_t> perm(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t m = 0; m < n; ++m) {
        const auto& img = r.atoms[m];
        for (std::size_t q = 0; q < n; ++q) {
            if (used[q]) continue;
            const auto& cand = config.atoms[q];
            if (cand.points.size() != img.points.size()) continue;
            if (std::abs(cand.detuning - img.detuning) > tol) continue;
            bool same = true;
            for (std::size_t l = 0; l < cand.points.size() && same; ++l)
                same = cand.points[l].site == img.points[l].site &&
                       std::abs(cand.points[l].strength - img.points[l].strength) <= tol;
            if (same) {
                perm[m] = q;
                used[q] = true;
                break;
            }
        }
        if (perm[m] == n) return std::nullopt;
    }
    return perm;
}

std::optional<Topology> classify_pair(const AtomSpec& a, const AtomSpec& b) {
    if (a.points.size() == 1 || b.points.size() == 1) return Topology::SmallAtom;
    if (a.points.size() != 2 || b.points.size() != 2) return std::nullopt;
    const long a1 = a.points[0].site, a2 = a.points[1].site;
    const long b1 = b.points[0].site, b2 = b.points[1].site;
    if (a2 < b1 || b2 < a1) return Topology::Separate;
    if ((a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2)) return Topology::Braided;
    if ((a1 < b1 && b2 < a2) || (b1 < a1 && a2 < b2)) return Topology::Nested;
    return std::nullopt;
}

}  // namespace giantqed

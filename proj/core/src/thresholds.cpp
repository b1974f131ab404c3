// thresholds.cpp — closed-form coupling thresholds, braided crossing point, metaband borders
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

#include "giantqed/boundstates.hpp"
#include "roots.hpp"

namespace giantqed {

namespace {

// 2 - delta on the upper branch, 2 + delta on the lower one
double gap_margin(double delta, Branch b) { return 2.0 - sign_of(b) * delta; }

ThresholdReport always(Branch b, LabelKind kind, int value, std::string id) {
    ThresholdReport r;
    r.branch = b;
    r.label = {kind, value};
    r.exists_always = true;
    r.formula_id = std::move(id);
    return r;
}

// threshold sqrt(numerator / denominator); a nonpositive numerator means the state always exists
ThresholdReport above(Branch b, LabelKind kind, int value, double numerator, double denominator, std::string id) {
    ThresholdReport r = always(b, kind, value, std::move(id));
    if (numerator > 0.0) {
        r.exists_always = false;
        r.threshold_g = std::sqrt(numerator / denominator);
    }
    return r;
}

ThresholdReport uncovered(Branch b, std::string note) {
    ThresholdReport r;
    r.branch = b;
    r.uncovered = true;
    r.formula_id = "uncovered";
    r.note = std::move(note);
    return r;
}

bool odd(long v) { return v % 2 != 0; }

std::vector<ThresholdReport> single_atom_table(int count, long spacing, double delta) {
    std::vector<ThresholdReport> out;
    out.push_back(always(Branch::Lower, LabelKind::None, 0, "single.lower"));
    if (count % 2 == 0 && odd(spacing)) {
        out.push_back(above(Branch::Upper, LabelKind::None, 0, 2.0 * gap_margin(delta, Branch::Upper),
                            static_cast<double>(count) * static_cast<double>(spacing), "single.upper.even_count_odd_spacing"));
    } else {
        out.push_back(always(Branch::Upper, LabelKind::None, 0, "single.upper"));
    }
    return out;
}

std::vector<ThresholdReport> pair_table(Topology t, long dn, long dm, double delta) {
    const auto L = Branch::Lower, U = Branch::Upper;
    const double lo = gap_margin(delta, L), up = gap_margin(delta, U);
    const auto n = static_cast<double>(dn), m = static_cast<double>(dm);
    const int even_parity = odd(dm) ? -1 : 1;  // upper state that always exists for even dn
    std::vector<ThresholdReport> out;
    switch (t) {
        case Topology::Separate:
            out.push_back(always(L, LabelKind::Parity, 1, "separate_pair.lower.symmetric"));
            out.push_back(above(L, LabelKind::Parity, -1, lo, n + 2 * m, "separate_pair.lower.antisymmetric"));
            if (odd(dn)) {
                out.push_back(above(U, LabelKind::Parity, 1, up, n, "separate_pair.upper.odd_dn"));
                out.push_back(above(U, LabelKind::Parity, -1, up, n, "separate_pair.upper.odd_dn"));
            } else {
                out.push_back(always(U, LabelKind::Parity, even_parity, "separate_pair.upper.even_dn.always"));
                out.push_back(above(U, LabelKind::Parity, -even_parity, up, n + 2 * m, "separate_pair.upper.even_dn"));
            }
            break;
        case Topology::Braided:
            if (dn <= dm) {
                out.push_back(uncovered(L, "braided pair table needs dn > dm"));
                out.push_back(uncovered(U, "braided pair table needs dn > dm"));
                break;
            }
            out.push_back(always(L, LabelKind::Parity, 1, "braided_pair.lower.symmetric"));
            out.push_back(above(L, LabelKind::Parity, -1, lo, n - m, "braided_pair.lower.antisymmetric"));
            if (odd(dn)) {
                const double s = odd(dm) ? 1.0 : -1.0;
                out.push_back(above(U, LabelKind::Parity, 1, up, n + s * m, "braided_pair.upper.odd_dn"));
                out.push_back(above(U, LabelKind::Parity, -1, up, n - s * m, "braided_pair.upper.odd_dn"));
            } else {
                out.push_back(always(U, LabelKind::Parity, even_parity, "braided_pair.upper.even_dn.always"));
                out.push_back(above(U, LabelKind::Parity, -even_parity, up, n - m, "braided_pair.upper.even_dn"));
            }
            break;
        case Topology::Nested: {
            out.push_back(always(L, LabelKind::Sign, 1, "nested_pair.lower.same_sign"));
            out.push_back(above(L, LabelKind::Sign, -1, lo, m, "nested_pair.lower.opposite_sign"));
            // zeta = +-1 (upper/lower root of the 2x2 problem) maps to the sign label
            auto eta = [&](int zeta) { return odd(dm) ? -zeta : zeta; };
            if (odd(dn)) {
                const double r = std::hypot(n, m);
                out.push_back(above(U, LabelKind::Sign, eta(1), up, n + m + r, "nested_pair.upper.odd_dn.upper_root"));
                out.push_back(above(U, LabelKind::Sign, eta(-1), up, n + m - r, "nested_pair.upper.odd_dn.lower_root"));
            } else {
                out.push_back(always(U, LabelKind::Sign, eta(1), "nested_pair.upper.even_dn.upper_root"));
                out.push_back(above(U, LabelKind::Sign, eta(-1), up, m, "nested_pair.upper.even_dn.lower_root"));
            }
            break;
        }
        case Topology::SmallAtom:
            throw std::invalid_argument("pair thresholds need a two-atom topology");
    }
    return out;
}

std::vector<ThresholdReport> chain_table(Topology t, long dn, long dm, double delta) {
    const auto L = Branch::Lower, U = Branch::Upper;
    const double lo = gap_margin(delta, L), up = gap_margin(delta, U);
    const auto m = static_cast<double>(dm);
    std::vector<ThresholdReport> out;
    if (t == Topology::Nested) {
        out.push_back(always(L, LabelKind::Border, 1, "nested_chain.lower.always"));
        out.push_back(above(L, LabelKind::Border, -1, 2.0 * lo, m, "nested_chain.lower"));
        const int fixed = odd(dm) ? -1 : 1;
        out.push_back(always(U, LabelKind::Border, fixed, "nested_chain.upper.always"));
        out.push_back(above(U, LabelKind::Border, -fixed, 2.0 * up, m, "nested_chain.upper"));
        return out;
    }
    if (t != Topology::Separate && t != Topology::Braided)
        throw std::invalid_argument("chain thresholds need separate, braided or nested");
    const bool braided = t == Topology::Braided;
    if (braided && dn <= 2 * dm) {
        out.push_back(uncovered(L, "braided chain table needs dn > 2 dm"));
        out.push_back(uncovered(U, "braided chain table needs dn > 2 dm"));
        return out;
    }
    const std::string tag = braided ? "braided_chain" : "separate_chain";
    out.push_back(always(L, LabelKind::Border, 1, tag + ".lower.always"));
    out.push_back(above(L, LabelKind::Border, -1, lo, m, tag + ".lower"));
    if (odd(dn)) {
        const auto n = static_cast<double>(braided ? dn - 2 * dm : dn);
        const int mixed = odd(dm) ? 1 : -1;  // label whose threshold involves both spacings
        out.push_back(above(U, LabelKind::Border, mixed, up * (n + m), n * m, tag + ".upper.odd_dn.mixed"));
        out.push_back(above(U, LabelKind::Border, -mixed, up, n, tag + ".upper.odd_dn"));
    } else {
        const int fixed = odd(dm) ? -1 : 1;
        out.push_back(always(U, LabelKind::Border, fixed, tag + ".upper.even_dn.always"));
        out.push_back(above(U, LabelKind::Border, -fixed, up, m, tag + ".upper.even_dn"));
    }
    if (braided)
        for (auto& r : out) {
            r.approximate = true;
            r.note = "braided chain borders are approximate";
        }
    return out;
}

}  // namespace

ThresholdSummary thresholds(Family family, Topology topology, int count, long dn, long dm, double delta) {
    if (!std::isfinite(delta)) throw std::invalid_argument("detuning must be finite");
    ThresholdSummary out;
    switch (family) {
        case Family::SingleAtom:
            if (count < 1 || dn < 1) throw std::invalid_argument("single atom needs count >= 1 and spacing >= 1");
            out.reports = single_atom_table(count, dn, delta);
            return out;
        case Family::Pair:
            if (dn < 1 || dm < 1) throw std::invalid_argument("spacings must be positive");
            out.reports = pair_table(topology, dn, dm, delta);
            if (topology == Topology::Braided && odd(dn) && dn > 2 * dm) {
                out.crossing_energy = braided_crossing_energy(dn, dm);
                if (delta < *out.crossing_energy) out.crossing_coupling = braided_crossing_coupling(dn, dm, delta);
            }
            return out;
        case Family::Chain:
            if (dn < 1 || dm < 1) throw std::invalid_argument("spacings must be positive");
            out.reports = chain_table(topology, dn, dm, delta);
            return out;
    }
    return out;
}

double braided_crossing_energy(long dn, long dm) {
    if (dm < 1 || dn <= 2 * dm) throw std::invalid_argument("crossing needs dn > 2 dm >= 2");
    const auto n = static_cast<double>(dn), m = static_cast<double>(dm);
    auto h = [&](double s) { return std::exp((n - 2 * m) * s) + std::exp(-n * s) - 2.0; };
    // below the quadratic estimate of the root, h < 0
    double a = m / ((n - 2 * m) * (n - 2 * m) + n * n);
    double b = 2.0 * a;
    while (h(b) < 0.0) b *= 2.0;
    while (h(a) >= 0.0) a *= 0.5;
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(h, a, b, boost::math::tools::eps_tolerance<double>(52), iters);
    return 2.0 * std::cosh(0.5 * (r.first + r.second));
}

double braided_crossing_coupling(long dn, long dm, double delta) {
    const double e = braided_crossing_energy(dn, dm);
    if (!(delta < e)) throw DomainError("crossing coupling needs detuning below the crossing energy");
    const double s = std::acosh(e / 2.0);
    const double num = (e - delta) * std::sqrt(e * e - 4.0);
    return std::sqrt(num / (2.0 * (1.0 - std::exp(-static_cast<double>(dn) * s))));
}

MetabandBorders metaband_borders(Topology topology, long dn, long dm, double g, double delta, Branch branch) {
    if (dn < 1 || dm < 1) throw std::invalid_argument("spacings must be positive");
    MetabandBorders out;
    out.branch = branch;
    out.approximate = topology == Topology::Braided;
    for (auto& r : chain_table(topology, dn, dm, delta))
        if (r.branch == branch) out.thresholds.push_back(std::move(r));
    const double far = std::abs(delta) + 2.0 + 16.0 * g * g + 10.0;
    const int beta = sign_of(branch);
    for (int gamma : {1, -1}) {
        auto f = [&](double E) { return delta - E + chain_limit_sigma(topology, dn, dm, g, E, branch, gamma); };
        const double edge = delta - 2.0 * beta + chain_limit_edge(topology, dn, dm, g, branch, gamma);
        const auto root = detail::gap_root(f, branch, edge, far);
        if (root) out.borders.push_back({gamma, root->energy});
    }
    std::sort(out.borders.begin(), out.borders.end(), [](const Border& a, const Border& b) { return a.energy < b.energy; });
    out.partially_merged = out.borders.size() < 2;
    return out;
}

}  // namespace giantqed

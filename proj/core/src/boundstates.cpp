// boundstates.cpp — bound-state solvers and dressed-state assembly
#include "giantqed/boundstates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "roots.hpp"

namespace giantqed {

namespace {

double parity(int beta, long d) { return (beta == 1 && (d % 2 != 0)) ? -1.0 : 1.0; }

// Upper end of the search interval: all roots satisfy |E| < this.
double search_span(const SystemConfig& c) {
    double dmax = 0.0;
    for (const auto& a : c.atoms) dmax = std::max(dmax, std::abs(a.detuning));
    const double G = c.max_total_coupling();
    return dmax + 2.0 + 4.0 * G * G * static_cast<double>(c.atoms.size()) + 10.0;
}

void gauge_fix(Eigen::VectorXd& u) {
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (std::abs(u(i)) > 1e-10) {
            if (u(i) < 0) u = -u;
            return;
        }
}

Eigen::MatrixXd shifted_matrix(const SystemConfig& c, double E, Branch branch) {
    Eigen::MatrixXd M = correction_matrix(c, E, branch);
    for (std::size_t m = 0; m < c.atoms.size(); ++m) M(m, m) += c.atoms[m].detuning - E;
    return M;
}

double sorted_eigenvalue(const SystemConfig& c, double E, Branch branch, Eigen::Index i) {
    const Eigen::MatrixXd M = shifted_matrix(c, E, branch);
    if (M.rows() == 1) return M(0, 0);
    if (M.rows() == 2) {
        const double t = 0.5 * (M(0, 0) + M(1, 1));
        const double h = std::hypot(0.5 * (M(0, 0) - M(1, 1)), M(0, 1));
        return i == 0 ? t - h : t + h;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(i);
}

double det_residual(const SystemConfig& c, double E, Branch branch) {
    const Eigen::MatrixXd M = shifted_matrix(c, E, branch);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double smallest = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        smallest = std::min(smallest, std::abs(ev(k)));
        scale = std::max(scale, std::abs(ev(k)));
    }
    return smallest / scale;
}

BoundState finish(const SystemConfig& unit, double J, double E, Branch branch, Eigen::VectorXd u,
                  StateLabel label, double residual, const SolveOptions& opt) {
    gauge_fix(u);
    BoundState s = assemble_wavefunction(unit, E, branch, u, opt.with_profiles ? opt.max_window : -1);
    s.energy = E * J;
    s.label = label;
    s.residual = residual;
    return s;
}

void sort_by_energy(std::vector<BoundState>& v) {
    std::stable_sort(v.begin(), v.end(), [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
}

}  // namespace

const char* to_string(LabelKind k) {
    switch (k) {
        case LabelKind::None: return "none";
        case LabelKind::Parity: return "parity";
        case LabelKind::Sign: return "sign";
        case LabelKind::Border: return "border";
        case LabelKind::Index: return "index";
    }
    return "none";
}

double PhotonProfile::at(long site) const {
    if (site < first_site || site > last_site()) return 0.0;
    return amplitudes[static_cast<std::size_t>(site - first_site)];
}

BoundState assemble_wavefunction(const SystemConfig& config, double energy, Branch branch,
                                 const Eigen::VectorXd& u, long max_window) {
    const SystemConfig c = in_hopping_units(config);
    const double J = config.waveguide.hopping;
    const double e = energy / J;
    if (!(std::abs(e) > 2.0)) throw DomainError("energy must lie outside the band (|E| > 2J)");
    if ((e > 0) != (branch == Branch::Upper)) throw std::invalid_argument("energy sign does not match branch");
    if (static_cast<std::size_t>(u.size()) != c.atoms.size()) throw std::invalid_argument("amplitude size mismatch");

    const int beta = sign_of(branch);
    const double x = decay_factor(e);
    const double s = std::acosh(std::abs(e) / 2.0);
    const double coth = 1.0 / std::tanh(s);

    double n2 = 0.0;
    for (std::size_t m = 0; m < c.atoms.size(); ++m)
        for (std::size_t mp = 0; mp < c.atoms.size(); ++mp)
            for (const auto& p : c.atoms[m].points)
                for (const auto& q : c.atoms[mp].points) {
                    const long d = std::labs(p.site - q.site);
                    n2 += u(m) * u(mp) * p.strength * q.strength * parity(beta, d) *
                          (coth + static_cast<double>(d)) * std::pow(x, static_cast<double>(d));
                }
    if (!(n2 > 0.0)) throw NumericError("photonic normalization is not positive");

    BoundState st;
    st.branch = branch;
    st.energy = energy;
    st.atomic_amplitudes = u;
    st.localization_length = 1.0 / s;
    st.normalization = std::sqrt(n2);
    st.mixing_angle = std::atan(st.normalization / (2.0 * std::sinh(s)));
    if (max_window < 0) return st;

    const double amp = beta * std::sin(st.mixing_angle) / st.normalization;
    auto value = [&](long j) {
        double f = 0.0;
        for (std::size_t m = 0; m < c.atoms.size(); ++m)
            for (const auto& p : c.atoms[m].points) {
                const long d = std::labs(j - p.site);
                f += u(m) * p.strength * parity(beta, d) * std::pow(x, static_cast<double>(d));
            }
        return amp * f;
    };
    const long lo = c.min_site(), hi = c.max_site();
    double lam = st.localization_length;
    long half = static_cast<long>(std::ceil(30.0 * lam)) + 2;
    for (;;) {
        bool capped = false;
        if (half >= max_window) {
            half = max_window;
            capped = true;
        }
        PhotonProfile prof;
        prof.first_site = lo - half;
        prof.amplitudes.resize(static_cast<std::size_t>(hi - lo + 2 * half + 1));
        double peak = 0.0;
        for (std::size_t k = 0; k < prof.amplitudes.size(); ++k) {
            prof.amplitudes[k] = value(prof.first_site + static_cast<long>(k));
            peak = std::max(peak, std::abs(prof.amplitudes[k]));
        }
        const double tail = std::max(std::abs(prof.amplitudes.front()), std::abs(prof.amplitudes.back()));
        if (tail < 1e-12 * peak || capped) {
            prof.capped = capped && !(tail < 1e-12 * peak);
            st.photonic_profile = std::move(prof);
            return st;
        }
        half *= 2;
    }
}

bool single_atom_state_exists(int n_points, long spacing, double g, double detuning, Branch branch) {
    const double lim = self_energy_single_edge(n_points, spacing, g, branch);
    if (branch == Branch::Upper) return 2.0 - detuning < lim;
    return -2.0 - detuning > lim;
}

double strong_coupling_energy(double sum_sq_strength, double detuning, Branch branch) {
    return 0.5 * detuning + sign_of(branch) * 0.5 * std::sqrt(detuning * detuning + 4.0 * sum_sq_strength);
}

std::vector<BoundState> solve_single_atom(const SystemConfig& config, const SolveOptions& opt) {
    require_valid(config);
    if (config.atoms.size() != 1) throw ConfigError("single-atom solver needs exactly one atom");
    const SystemConfig c = in_hopping_units(config);
    const double J = config.waveguide.hopping;
    const double delta = c.atoms[0].detuning;
    const double far = search_span(c);
    Eigen::VectorXd u(1);
    u << 1.0;
    std::vector<BoundState> out;
    for (Branch b : {Branch::Lower, Branch::Upper}) {
        auto f = [&](double E) { return delta - E + sigma_element(c, 0, 0, E, b); };
        const double edge = delta - 2.0 * sign_of(b) + edge_limit_form(c, u, b);
        const auto root = detail::gap_root(f, b, edge, far);
        if (!root) continue;
        out.push_back(finish(c, J, root->energy, b, u, {}, std::abs(f(root->energy)), opt));
    }
    sort_by_energy(out);
    return out;
}

std::vector<BoundState> solve_two_atoms(const SystemConfig& config, const SolveOptions& opt) {
    require_valid(config);
    if (config.atoms.size() != 2) throw ConfigError("two-atom solver needs exactly two atoms");
    const SystemConfig c = in_hopping_units(config);
    const double J = config.waveguide.hopping;
    const double far = search_span(c);
    const auto perm = reflection_permutation(c);
    const bool swap_symmetric = perm && (*perm)[0] == 1;
    std::vector<BoundState> out;

    for (Branch b : {Branch::Lower, Branch::Upper}) {
        const int beta = sign_of(b);
        std::vector<BoundState> branch_states;
        if (swap_symmetric) {
            const double delta = c.atoms[0].detuning;
            for (int alpha : {1, -1}) {
                Eigen::VectorXd u(2);
                u << 1.0, static_cast<double>(alpha);
                u /= std::sqrt(2.0);
                auto f = [&](double E) {
                    return delta - E + sigma_element(c, 0, 0, E, b) + alpha * sigma_element(c, 0, 1, E, b);
                };
                const double edge = delta - 2.0 * beta + edge_limit_form(c, u, b);
                const auto root = detail::gap_root(f, b, edge, far);
                if (!root) continue;
                branch_states.push_back(finish(c, J, root->energy, b, u, {LabelKind::Parity, alpha},
                                               det_residual(c, root->energy, b), opt));
            }
        } else {
            const auto edge = edge_limit_spectrum(c, b);
            for (int zeta : {-1, 1}) {
                auto f = [&](double E) { return sorted_eigenvalue(c, E, b, zeta < 0 ? 0 : 1); };
                const auto root = detail::gap_root(f, b, edge.limits[zeta < 0 ? 0 : 1], far);
                if (!root) continue;
                const double E = root->energy;
                const Eigen::MatrixXd S = correction_matrix(c, E, b);
                const double da = c.atoms[0].detuning + S(0, 0);
                const double db = c.atoms[1].detuning + S(1, 1);
                const double mutual = S(0, 1);
                const double diff = da - db;
                const double rad = std::sqrt(diff * diff + 4.0 * mutual * mutual);
                // tan(Theta) = -2 mutual / (diff - zeta rad), u = (sin Theta, cos Theta)
                const double num = -2.0 * mutual;
                const double den = diff - zeta * rad;
                Eigen::VectorXd u(2);
                if (std::hypot(num, den) > 1e-300) {
                    const double theta = std::atan2(num, den);
                    u << std::sin(theta), std::cos(theta);
                } else {
                    const bool first = (zeta > 0) == (da > db);
                    u << (first ? 1.0 : 0.0), (first ? 0.0 : 1.0);
                }
                const double prod = u(0) * u(1);
                const int eta = prod > 0 ? 1 : (prod < 0 ? -1 : 0);
                branch_states.push_back(finish(c, J, E, b, u, {LabelKind::Sign, eta}, det_residual(c, E, b), opt));
            }
        }
        if (branch_states.size() == 2 &&
            std::abs(branch_states[0].energy - branch_states[1].energy) < opt.degeneracy_gap * J) {
            branch_states[0].near_degenerate = branch_states[1].near_degenerate = true;
        }
        for (auto& s : branch_states) out.push_back(std::move(s));
    }
    sort_by_energy(out);
    return out;
}

std::vector<BoundState> solve_branch(const SystemConfig& config, Branch branch, const SolveOptions& opt) {
    require_valid(config);
    const SystemConfig c = in_hopping_units(config);
    const double J = config.waveguide.hopping;
    const double far = search_span(c);
    const auto n = static_cast<Eigen::Index>(c.atoms.size());
    const auto edge = edge_limit_spectrum(c, branch);

    std::vector<double> roots;
    std::vector<Eigen::Index> index;
    for (Eigen::Index i = 0; i < n; ++i) {
        auto f = [&](double E) { return sorted_eigenvalue(c, E, branch, i); };
        const auto root = detail::gap_root(f, branch, edge.limits[static_cast<std::size_t>(i)], far);
        if (!root) continue;
        roots.push_back(root->energy);
        index.push_back(i);
    }

    // atomic amplitudes: eigenvector of the vanishing branch; near-degenerate groups share a subspace
    const auto perm = reflection_permutation(c);
    std::vector<BoundState> out;
    std::size_t k = 0;
    while (k < roots.size()) {
        std::size_t end = k + 1;
        while (end < roots.size() && std::abs(roots[end] - roots[end - 1]) < opt.degeneracy_gap) ++end;
        const std::size_t width = end - k;
        const double mean = std::accumulate(roots.begin() + static_cast<long>(k), roots.begin() + static_cast<long>(end), 0.0) /
                            static_cast<double>(width);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(shifted_matrix(c, mean, branch));
        Eigen::MatrixXd V(n, static_cast<Eigen::Index>(width));
        for (std::size_t q = 0; q < width; ++q) V.col(static_cast<Eigen::Index>(q)) = es.eigenvectors().col(index[k + q]);
        if (width > 1 && perm) {
            Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index m = 0; m < n; ++m) P((*perm)[static_cast<std::size_t>(m)], m) = 1.0;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ps(V.transpose() * P * V);
            V = V * ps.eigenvectors();
        }
        for (std::size_t q = 0; q < width; ++q) {
            const double E = roots[k + q];
            Eigen::VectorXd u = V.col(static_cast<Eigen::Index>(q));
            u.normalize();
            BoundState st = finish(c, J, E, branch, u, {LabelKind::Index, static_cast<int>(index[k + q])},
                                   det_residual(c, E, branch), opt);
            st.near_degenerate = width > 1;
            out.push_back(std::move(st));
        }
        k = end;
    }
    sort_by_energy(out);
    return out;
}

std::vector<BoundState> solve_general(const SystemConfig& config, const SolveOptions& opt) {
    auto lower = solve_branch(config, Branch::Lower, opt);
    auto upper = solve_branch(config, Branch::Upper, opt);
    for (auto& s : upper) lower.push_back(std::move(s));
    return lower;
}

}  // namespace giantqed

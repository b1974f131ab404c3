// oracle.cpp — lattice diagonalization (banded or dense LAPACK) and the coupling-site matching solver
#include "giantqed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>

#include <lapacke.h>

namespace giantqed {

namespace {

void check_info(lapack_int info, const char* routine) {
    if (info != 0) throw NumericError(std::string(routine) + " failed with info " + std::to_string(info));
}

double max_residual(const Eigen::MatrixXd& H, const std::vector<double>& w, const Eigen::MatrixXd& V) {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        const Eigen::VectorXd r = H * V.col(c) - w[static_cast<std::size_t>(c)] * V.col(c);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace

LatticeHamiltonian build_matrix(const SystemConfig& config, long n_sites, bool centered) {
    require_valid(config);
    const long lo = config.min_site(), hi = config.max_site();
    const long span = hi - lo + 1;
    if (n_sites < span) throw ConfigError("lattice of " + std::to_string(n_sites) + " sites cannot hold a pattern spanning " +
                                          std::to_string(span));
    LatticeHamiltonian h;
    h.n_sites = n_sites;
    h.n_atoms = config.atoms.size();
    h.site_offset = centered ? (n_sites - span) / 2 - lo : -lo;

    const double J = config.waveguide.hopping;
    const auto dim = static_cast<Eigen::Index>(n_sites) + static_cast<Eigen::Index>(h.n_atoms);
    h.matrix = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index j = 0; j + 1 < n_sites; ++j) h.matrix(j, j + 1) = h.matrix(j + 1, j) = -J;
    for (std::size_t m = 0; m < h.n_atoms; ++m) {
        const Eigen::Index a = n_sites + static_cast<Eigen::Index>(m);
        h.matrix(a, a) = config.atoms[m].detuning;
        for (const auto& p : config.atoms[m].points) {
            const long idx = p.site + h.site_offset;
            if (idx < 0 || idx >= n_sites) throw ConfigError("coupling point outside the lattice");
            h.matrix(idx, a) += p.strength;
            h.matrix(a, idx) += p.strength;
        }
    }

    // rough decay length of the weakest-bound state, from the strong-coupling energy
    double sum_sq = 0.0, dmax = 0.0;
    for (const auto& a : config.atoms) {
        dmax = std::max(dmax, std::abs(a.detuning));
        double s = 0.0;
        for (const auto& p : a.points) s += p.strength * p.strength;
        sum_sq = std::max(sum_sq, s);
    }
    const double e_est = std::max(std::abs(strong_coupling_energy(sum_sq / (J * J), dmax / J, Branch::Upper)), 2.0 + 1e-6);
    const double lam = localization_length(e_est);
    const long margin = std::min(lo + h.site_offset, n_sites - 1 - (hi + h.site_offset));
    if (static_cast<double>(margin) < 20.0 * lam)
        h.warnings.push_back("coupling points are " + std::to_string(margin) + " sites from the lattice end, below 20 decay lengths (" +
                             std::to_string(20.0 * lam) + ")");
    return h;
}

OracleResult diagonalize(const LatticeHamiltonian& h, bool with_vectors) {
    // Eigen's own kernels: independent of whichever BLAS the process loaded
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericError("self-adjoint eigensolver did not converge");
    OracleResult out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (with_vectors) {
        out.residual = max_residual(h.matrix, out.eigenvalues, es.eigenvectors());
        out.eigenvectors = es.eigenvectors();
    }
    return out;
}

namespace {

double gershgorin_bound(const Eigen::MatrixXd& H) {
    double bound = 0.0;
    for (Eigen::Index i = 0; i < H.rows(); ++i) bound = std::max(bound, H.row(i).cwiseAbs().sum());
    return bound + 1.0;
}

// Reordering that makes the lattice matrix banded: each atom row sits next to the middle of its
// coupling points. Returns position[original index] and the half bandwidth.
std::pair<std::vector<lapack_int>, lapack_int> band_ordering(const LatticeHamiltonian& h) {
    const Eigen::Index ns = h.n_sites, na = static_cast<Eigen::Index>(h.n_atoms);
    std::vector<std::pair<double, Eigen::Index>> keys;  // (sort key, original index)
    for (Eigen::Index j = 0; j < ns; ++j) keys.push_back({static_cast<double>(j), j});
    for (Eigen::Index m = 0; m < na; ++m) {
        double lo = INFINITY, hi = -INFINITY;
        for (Eigen::Index j = 0; j < ns; ++j)
            if (h.matrix(ns + m, j) != 0.0) {
                lo = std::min(lo, static_cast<double>(j));
                hi = std::max(hi, static_cast<double>(j));
            }
        keys.push_back({std::isfinite(lo) ? 0.5 * (lo + hi) + 0.25 : static_cast<double>(ns), ns + m});
    }
    std::stable_sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<lapack_int> pos(keys.size());
    for (std::size_t q = 0; q < keys.size(); ++q) pos[static_cast<std::size_t>(keys[q].second)] = static_cast<lapack_int>(q);
    lapack_int kd = 1;
    for (Eigen::Index a = ns; a < ns + na; ++a)
        for (Eigen::Index j = 0; j < ns + na; ++j)
            if (h.matrix(a, j) != 0.0) kd = std::max(kd, std::abs(pos[static_cast<std::size_t>(a)] - pos[static_cast<std::size_t>(j)]));
    for (Eigen::Index j = 0; j + 1 < ns; ++j)
        kd = std::max(kd, std::abs(pos[static_cast<std::size_t>(j + 1)] - pos[static_cast<std::size_t>(j)]));
    return {pos, kd};
}

// Windowed eigenpairs of the banded reordering: eigenvalues by bisection on the band form,
// eigenvectors by inverse iteration with a banded LU, orthogonalized inside clusters.
std::pair<std::vector<double>, std::vector<Eigen::VectorXd>> banded_outside(const LatticeHamiltonian& h, double energy_cut,
                                                                            const std::vector<lapack_int>& pos, lapack_int kd) {
    const auto n = static_cast<lapack_int>(h.dimension());
    const Eigen::MatrixXd& H = h.matrix;
    // permuted entries (row, col, value), upper triangle incl. diagonal
    std::vector<std::tuple<lapack_int, lapack_int, double>> entries;
    for (Eigen::Index j = 0; j < n; ++j) {
        auto add = [&](Eigen::Index i) {
            const lapack_int r = pos[static_cast<std::size_t>(i)], c = pos[static_cast<std::size_t>(j)];
            if (H(i, j) != 0.0 && r <= c) entries.push_back({r, c, H(i, j)});
        };
        if (j < h.n_sites) {
            add(j);
            if (j > 0) add(j - 1);
            if (j + 1 < h.n_sites) add(j + 1);
            for (Eigen::Index a = h.n_sites; a < n; ++a) add(a);
        } else {
            for (Eigen::Index i = 0; i < n; ++i) add(i);
        }
    }

    const double bound = gershgorin_bound(H);
    std::vector<double> values;
    for (auto [vl, vu] : {std::pair{-bound, -energy_cut}, std::pair{energy_cut, bound}}) {
        if (!(vl < vu)) continue;
        Eigen::MatrixXd ab = Eigen::MatrixXd::Zero(kd + 1, n);
        for (const auto& [r, c, v] : entries) ab(kd + r - c, c) = v;
        std::vector<double> w(static_cast<std::size_t>(n));
        std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
        Eigen::MatrixXd q(1, 1), z(1, 1);
        lapack_int found = 0;
        check_info(LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'V', 'U', n, kd, ab.data(), kd + 1, q.data(), 1, vl, vu, 0, 0,
                                  2.0 * LAPACKE_dlamch('S'), &found, w.data(), z.data(), 1, ifail.data()),
                   "dsbevx");
        values.insert(values.end(), w.begin(), w.begin() + found);
    }
    std::sort(values.begin(), values.end());

    // general band storage for dgbtrf: kl = ku = kd, leading dimension 3 kd + 1
    const lapack_int ldab = 3 * kd + 1;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> start(-1.0, 1.0);
    const double cluster = 1e-3 * bound, target = 1e3 * std::numeric_limits<double>::epsilon() * bound;
    std::vector<Eigen::VectorXd> vectors;
    for (std::size_t q = 0; q < values.size(); ++q) {
        double shift = values[q];
        Eigen::MatrixXd lu;
        std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
        for (int attempt = 0;; ++attempt) {
            lu = Eigen::MatrixXd::Zero(ldab, n);
            for (const auto& [r, c, v] : entries) {
                const double val = r == c ? v - shift : v;
                lu(2 * kd + r - c, c) = val;
                if (r != c) lu(2 * kd + c - r, r) = val;
            }
            for (lapack_int i = 0; i < n; ++i)
                if (lu(2 * kd, i) == 0.0 && !std::any_of(entries.begin(), entries.end(), [&](const auto& e) {
                        return std::get<0>(e) == i && std::get<1>(e) == i;
                    }))
                    lu(2 * kd, i) = -shift;
            const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kd, kd, lu.data(), ldab, ipiv.data());
            if (info == 0) break;
            if (info < 0 || attempt > 3) check_info(info, "dgbtrf");
            shift += 4.0 * std::numeric_limits<double>::epsilon() * bound;  // exactly singular: nudge the shift
        }
        Eigen::VectorXd x(n);
        for (lapack_int i = 0; i < n; ++i) x(i) = start(rng);
        for (int it = 0; it < 8; ++it) {
            x.normalize();
            check_info(LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kd, kd, 1, lu.data(), ldab, ipiv.data(), x.data(), n), "dgbtrs");
            for (std::size_t p = q; p-- > 0 && values[q] - values[p] < cluster;) x -= vectors[p].dot(x) * vectors[p];
            x.normalize();
            if (it >= 1) {
                Eigen::VectorXd orig(n);
                for (Eigen::Index i = 0; i < n; ++i) orig(i) = x(pos[static_cast<std::size_t>(i)]);
                if ((H * orig - values[q] * orig).cwiseAbs().maxCoeff() < target) break;
            }
        }
        vectors.push_back(x);
    }
    // back to the original ordering
    for (auto& v : vectors) {
        Eigen::VectorXd orig(n);
        for (Eigen::Index i = 0; i < n; ++i) orig(i) = v(pos[static_cast<std::size_t>(i)]);
        v = std::move(orig);
    }
    return {values, vectors};
}

// Dense route for wide coupling patterns: tridiagonal reduction, MRRR on the windows, back-transform.
std::pair<std::vector<double>, std::vector<Eigen::VectorXd>> dense_outside(const LatticeHamiltonian& h, double energy_cut) {
    const auto n = static_cast<lapack_int>(h.dimension());
    Eigen::MatrixXd a = h.matrix;
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n)), tau(static_cast<std::size_t>(n));
    check_info(LAPACKE_dsytrd(LAPACK_COL_MAJOR, 'U', n, a.data(), n, d.data(), e.data(), tau.data()), "dsytrd");
    const double bound = gershgorin_bound(h.matrix);

    // interlacing: at most one eigenvalue per atom on each side of the photon band
    const lapack_int nzc = std::max<lapack_int>(1, static_cast<lapack_int>(h.n_atoms));
    std::vector<double> values;
    std::vector<Eigen::VectorXd> vectors;
    for (auto [vl, vu] : {std::pair{-bound, -energy_cut}, std::pair{energy_cut, bound}}) {
        if (!(vl < vu)) continue;
        std::vector<double> dd = d, ee = e, w(static_cast<std::size_t>(n));
        Eigen::MatrixXd z(n, nzc);
        std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(nzc));
        lapack_int found = 0;
        lapack_logical tryrac = 1;
        check_info(LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'V', n, dd.data(), ee.data(), vl, vu, 0, 0, &found, w.data(),
                                  z.data(), n, nzc, isuppz.data(), &tryrac),
                   "dstemr");
        if (found == 0) continue;
        Eigen::MatrixXd c = z.leftCols(found);
        check_info(LAPACKE_dormtr(LAPACK_COL_MAJOR, 'L', 'U', 'N', n, found, a.data(), n, tau.data(), c.data(), n), "dormtr");
        for (lapack_int q = 0; q < found; ++q) {
            values.push_back(w[static_cast<std::size_t>(q)]);
            vectors.push_back(c.col(q));
        }
    }
    return {values, vectors};
}

}  // namespace

OracleResult diagonalize_outside(const LatticeHamiltonian& h, double energy_cut) {
    const auto [pos, kd] = band_ordering(h);
    auto [values, vectors] = 8 * kd < h.dimension() ? banded_outside(h, energy_cut, pos, kd) : dense_outside(h, energy_cut);

    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    OracleResult out;
    Eigen::MatrixXd V(h.dimension(), static_cast<Eigen::Index>(values.size()));
    for (std::size_t q = 0; q < order.size(); ++q) {
        out.eigenvalues.push_back(values[order[q]]);
        V.col(static_cast<Eigen::Index>(q)) = vectors[order[q]];
    }
    out.residual = max_residual(h.matrix, out.eigenvalues, V);
    out.eigenvectors = std::move(V);
    return out;
}

std::vector<ExactBoundState> bound_states_exact(const SystemConfig& config, long n_sites) {
    const LatticeHamiltonian h = build_matrix(config, n_sites, true);
    const double J = config.waveguide.hopping;
    const OracleResult res = diagonalize_outside(h, 2.0 * J * (1.0 + 10.0 / static_cast<double>(n_sites)));
    std::vector<ExactBoundState> out;
    for (std::size_t q = 0; q < res.eigenvalues.size(); ++q) {
        Eigen::VectorXd v = res.eigenvectors->col(static_cast<Eigen::Index>(q));
        v.normalize();
        const Eigen::VectorXd u = v.tail(static_cast<Eigen::Index>(h.n_atoms));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            // atoms first, then photons, for the gauge reference
            const Eigen::Index idx = i < u.size() ? n_sites + i : i - u.size();
            if (std::abs(v(idx)) > 1e-10) {
                if (v(idx) < 0) v = -v;
                break;
            }
        }
        ExactBoundState s;
        s.energy = res.eigenvalues[q];
        s.atomic_amplitudes = v.tail(static_cast<Eigen::Index>(h.n_atoms));
        s.photonic_profile.first_site = -h.site_offset;
        s.photonic_profile.amplitudes.assign(v.data(), v.data() + n_sites);
        s.residual = res.residual;
        out.push_back(std::move(s));
    }
    return out;
}

Amplitudes scattering_exact(const SystemConfig& config, double k) {
    require_valid(config);
    if (!(k > 0.0 && k < std::numbers::pi)) throw DomainError("wave vector must lie in (0, pi)");
    using cd = std::complex<double>;
    const double J = config.waveguide.hopping;
    const double E = -2.0 * J * std::cos(k);

    // distinct coupling sites with their (atom, strength) lists
    std::map<long, std::vector<std::pair<std::size_t, double>>> sites;
    for (std::size_t m = 0; m < config.atoms.size(); ++m)
        for (const auto& p : config.atoms[m].points) sites[p.site].push_back({m, p.strength});
    if (sites.empty()) return {1.0, 0.0};

    const auto P = static_cast<Eigen::Index>(sites.size());
    const auto Na = static_cast<Eigen::Index>(config.atoms.size());
    const Eigen::Index dim = 2 * P + Na;
    // unknowns: A_1..A_P at [0, P), B_0..B_{P-1} at [P, 2P), v_m at 2P + m; A_0 = 1, B_P = 0
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    auto plane = [&](long j, int sign) { return std::exp(cd(0.0, sign * k * static_cast<double>(j))); };
    // adds coeff * phi_region(j) to row `row`
    auto add_field = [&](Eigen::Index row, Eigen::Index region, long j, cd coeff) {
        if (region == 0)
            rhs(row) -= coeff * plane(j, 1);
        else
            M(row, region - 1) += coeff * plane(j, 1);
        if (region < P) M(row, P + region) += coeff * plane(j, -1);
    };

    Eigen::Index s = 1;
    for (const auto& [site, links] : sites) {
        const Eigen::Index cont = 2 * (s - 1), hop = 2 * (s - 1) + 1;
        add_field(cont, s - 1, site, 1.0);
        add_field(cont, s, site, -1.0);
        add_field(hop, s - 1, site, E);
        add_field(hop, s - 1, site - 1, J);
        add_field(hop, s, site + 1, J);
        for (const auto& [m, g] : links) {
            M(hop, 2 * P + static_cast<Eigen::Index>(m)) -= g;
            add_field(2 * P + static_cast<Eigen::Index>(m), s - 1, site, -g);
        }
        ++s;
    }
    for (Eigen::Index m = 0; m < Na; ++m) M(2 * P + m, 2 * P + m) += E - config.atoms[static_cast<std::size_t>(m)].detuning;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    if (!(lu.rcond() > 1e-14)) throw NumericError("matching system is singular at this wave vector; perturb k by about 1e-9");
    const Eigen::VectorXcd x = lu.solve(rhs);
    return {x(P - 1), x(P)};
}

}  // namespace giantqed

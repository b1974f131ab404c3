// scattering.cpp — resolvent and closed-form two-atom amplitudes, sweeps, weak-coupling tables
#include "giantqed/scattering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace giantqed {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void require_wave_vector(double k) {
    if (!(k > 0.0 && k < std::numbers::pi)) throw DomainError("wave vector must lie strictly inside (0, pi)");
}

cd phase(double k, long d) { return std::exp(I * (k * static_cast<double>(d))); }

// sum g g' e^{ik|n - n'|} over the points of atoms a, b
cd exchange_sum(const AtomSpec& a, const AtomSpec& b, double k) {
    cd s = 0.0;
    for (const auto& p : a.points)
        for (const auto& q : b.points) s += p.strength * q.strength * phase(k, std::labs(p.site - q.site));
    return s;
}

cd emission(const AtomSpec& a, double k) {
    cd s = 0.0;
    for (const auto& p : a.points) s += p.strength * phase(k, p.site);
    return s;
}

}  // namespace

double group_velocity(double k, double hopping) {
    require_wave_vector(k);
    return 2.0 * hopping * std::sin(k);
}

double group_velocity_from_energy(double omega, double hopping) {
    if (!(std::abs(omega) < 2.0 * hopping)) throw DomainError("energy outside the band");
    return std::sqrt(4.0 * hopping * hopping - omega * omega);
}

double photon_energy(double k, double hopping) { return -2.0 * hopping * std::cos(k); }

Eigen::MatrixXcd effective_hamiltonian(const SystemConfig& config, double k) {
    require_valid(config);
    const double v = group_velocity(k, config.waveguide.hopping);
    const auto n = static_cast<Eigen::Index>(config.atoms.size());
    Eigen::MatrixXcd H(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index mp = 0; mp < n; ++mp) {
            const auto& a = config.atoms[static_cast<std::size_t>(m)];
            const auto& b = config.atoms[static_cast<std::size_t>(mp)];
            H(m, mp) = -I / v * exchange_sum(a, b, k);
            if (m == mp) H(m, mp) += a.detuning;
        }
    return H;
}

Amplitudes amplitudes(const SystemConfig& config, double k) {
    const Eigen::MatrixXcd H = effective_hamiltonian(config, k);
    const double J = config.waveguide.hopping;
    const double v = group_velocity(k, J);
    const auto n = H.rows();
    if (n == 0) return {1.0, 0.0};
    Eigen::VectorXcd G(n);
    for (Eigen::Index m = 0; m < n; ++m) G(m) = emission(config.atoms[static_cast<std::size_t>(m)], k);
    const Eigen::MatrixXcd R = photon_energy(k, J) * Eigen::MatrixXcd::Identity(n, n) - H;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(R);
    if (!(lu.rcond() > 1e-14)) throw NumericError("resolvent is singular at this wave vector; perturb k by about 1e-9");
    const Eigen::VectorXcd X = lu.solve(G);
    return {1.0 - I / v * G.dot(X), -I / v * (G.transpose() * X)(0)};
}

Amplitudes two_atom_amplitudes(const SystemConfig& config, double k) {
    require_valid(config);
    if (config.atoms.size() != 2 || config.atoms[0].points.size() != 2 || config.atoms[1].points.size() != 2)
        throw ConfigError("two-atom formula needs two atoms with two coupling points each");
    const double J = config.waveguide.hopping;
    const double v = group_velocity(k, J);
    const double w = photon_energy(k, J);
    const AtomSpec& a = config.atoms[0];
    const AtomSpec& b = config.atoms[1];

    auto dressed = [&](const AtomSpec& m) { return I * (w - m.detuning) - exchange_sum(m, m, k) / v; };
    auto numerator_factor = [&](const AtomSpec& m) {
        const auto& p = m.points;
        const double s = std::sin(k * static_cast<double>(std::labs(p[1].site - p[0].site)));
        return I * (w - m.detuning) - I * (2.0 / v) * p[0].strength * p[1].strength * s;
    };
    const cd mutual = exchange_sum(a, b, k) / v;
    const cd den = dressed(a) * dressed(b) - mutual * mutual;

    cd A = 0.0, B = 0.0;
    for (const auto& al : a.points)
        for (const auto& bl : b.points)
            for (const auto& af : a.points)
                for (const auto& bf : b.points) {
                    const double w4 = al.strength * bl.strength * af.strength * bf.strength;
                    A += w4 * (phase(k, std::labs(al.site - bl.site)) - phase(k, al.site - bl.site)) *
                         (phase(k, std::labs(af.site - bf.site)) - phase(k, bf.site - af.site));
                    B += w4 * phase(k, al.site + bl.site) * phase(k, std::labs(af.site - bf.site));
                }
    A /= v * v;
    B *= 2.0 / (v * v);

    auto outgoing = [&](const AtomSpec& m) {
        cd s = 0.0;
        for (const auto& p : m.points)
            for (const auto& q : m.points) s += p.strength * q.strength * phase(k, p.site + q.site);
        return s;
    };
    const cd t = (numerator_factor(a) * numerator_factor(b) - A) / den;
    const cd r = (dressed(a) * outgoing(b) / v + dressed(b) * outgoing(a) / v + B) / den;
    return {t, r};
}

Amplitudes amplitudes(const SystemConfig& config, double k, Route route) {
    switch (route) {
        case Route::Matrix: return amplitudes(config, k);
        case Route::TwoAtom: return two_atom_amplitudes(config, k);
        case Route::Lattice: return scattering_exact(config, k);
    }
    throw std::invalid_argument("unknown route");
}

Sweep reflectance_sweep(const SystemConfig& config, const std::vector<double>& grid, GridAxis axis, Route route) {
    require_valid(config);
    const double J = config.waveguide.hopping;
    const double reference = config.atoms.empty() ? 0.0 : config.atoms[0].detuning;
    Sweep out;
    for (double value : grid) {
        double k = value;
        if (axis == GridAxis::Detuning) {
            const double c = -(reference + value) / (2.0 * J);
            if (!(c > -1.0 && c < 1.0)) {
                out.notices.push_back("detuning " + std::to_string(value) + " lies outside the band; skipped");
                continue;
            }
            k = std::acos(c);
        }
        ScatteringPoint p;
        p.k = k;
        p.omega = photon_energy(k, J);
        p.detuning = p.omega - reference;
        try {
            const Amplitudes amp = amplitudes(config, k, route);
            p.t = amp.t;
            p.r = amp.r;
            p.T = std::norm(amp.t);
            p.R = std::norm(amp.r);
        } catch (const std::exception& e) {
            p.error = e.what();
            p.t = p.r = std::numeric_limits<double>::quiet_NaN();
            p.T = p.R = std::numeric_limits<double>::quiet_NaN();
        }
        out.points.push_back(std::move(p));
    }
    return out;
}

CharacteristicQuantities characteristic_quantities(Topology topology, long dm, double g, double detuning,
                                                   double hopping) {
    if (dm < 1) throw std::invalid_argument("spacing must be positive");
    if (!(std::abs(detuning) < 2.0 * hopping)) throw DomainError("atomic frequency must lie inside the band");
    CharacteristicQuantities q;
    q.k_atom = std::acos(-detuning / (2.0 * hopping));
    const double v = group_velocity(q.k_atom, hopping);
    q.gamma = 2.0 * g * g / v;
    q.phase = q.k_atom * static_cast<double>(dm);
    q.delay = static_cast<double>(dm) / v;
    q.markov_ratio = q.gamma * q.delay;
    q.markov_coupling = std::sqrt(2.0 / static_cast<double>(dm)) * std::sin(q.k_atom);
    q.long_wavelength_bound = std::pow(q.k_atom, 1.5);

    const double f = q.phase, gm = q.gamma;
    auto rate = [](double x) { return x < 0.0 && x > -1e-12 ? 0.0 : x; };
    q.tabulated = true;
    switch (topology) {
        case Topology::Separate:
            q.lamb_shift_a = q.lamb_shift_b = gm * std::sin(f);
            q.decay_a = q.decay_b = rate(2.0 * gm * (1.0 + std::cos(f)));
            q.exchange = gm * (std::sin(f) + 2.0 * std::sin(2 * f) + std::sin(3 * f)) / 2.0;
            q.collective_decay = gm * (std::cos(f) + 2.0 * std::cos(2 * f) + std::cos(3 * f));
            break;
        case Topology::Braided:
            q.lamb_shift_a = q.lamb_shift_b = gm * std::sin(2 * f);
            q.decay_a = q.decay_b = rate(2.0 * gm * (1.0 + std::cos(2 * f)));
            q.exchange = gm * (3.0 * std::sin(f) + std::sin(3 * f)) / 2.0;
            q.collective_decay = gm * (3.0 * std::cos(f) + std::cos(3 * f));
            break;
        case Topology::Nested:
            q.lamb_shift_a = gm * std::sin(3 * f);
            q.lamb_shift_b = gm * std::sin(f);
            q.decay_a = rate(2.0 * gm * (1.0 + std::cos(3 * f)));
            q.decay_b = rate(2.0 * gm * (1.0 + std::cos(f)));
            q.exchange = gm * (std::sin(f) + std::sin(2 * f));
            q.collective_decay = 2.0 * gm * (std::cos(f) + std::cos(2 * f));
            break;
        case Topology::SmallAtom:
            q.tabulated = false;
            break;
    }
    return q;
}

namespace {

// vertex of the parabola through three samples around i
Extremum refine(const std::vector<double>& x, const std::vector<double>& y, std::size_t i) {
    Extremum e{i, x[i], y[i]};
    if (i == 0 || i + 1 >= x.size()) return e;
    const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
    const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
    const double d0 = (y1 - y0) / (x1 - x0), d1 = (y2 - y1) / (x2 - x1);
    const double curv = (d1 - d0) / (x2 - x0);
    if (curv == 0.0) return e;
    const double slope_mid = d0 + curv * (x1 - x0);  // derivative at x1
    const double shift = -slope_mid / (2.0 * curv);
    if (std::abs(shift) > std::max(x1 - x0, x2 - x1)) return e;
    e.position = x1 + shift;
    e.value = y1 + slope_mid * shift + curv * shift * shift;
    return e;
}

void require_curve(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("need matching samples, at least three");
}

}  // namespace

std::vector<Extremum> local_maxima(const std::vector<double>& x, const std::vector<double>& y, double min_value) {
    require_curve(x, y);
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] > y[i - 1] && y[i] >= y[i + 1] && y[i] >= min_value) out.push_back(refine(x, y, i));
    return out;
}

std::vector<Extremum> local_minima(const std::vector<double>& x, const std::vector<double>& y) {
    require_curve(x, y);
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i)
        if (y[i] < y[i - 1] && y[i] <= y[i + 1]) out.push_back(refine(x, y, i));
    return out;
}

std::optional<double> full_width_half_max(const std::vector<double>& x, const std::vector<double>& y, std::size_t peak) {
    require_curve(x, y);
    if (peak >= y.size()) throw std::out_of_range("peak index");
    const double half = 0.5 * y[peak];
    auto cross = [&](std::size_t i, std::size_t j) { return x[i] + (half - y[i]) * (x[j] - x[i]) / (y[j] - y[i]); };
    std::optional<double> left, right;
    for (std::size_t i = peak; i > 0; --i)
        if (y[i - 1] <= half) {
            left = cross(i - 1, i);
            break;
        }
    for (std::size_t i = peak; i + 1 < y.size(); ++i)
        if (y[i + 1] <= half) {
            right = cross(i, i + 1);
            break;
        }
    if (!left || !right) return std::nullopt;
    return *right - *left;
}

}  // namespace giantqed

// correction.cpp — energy-correction functions, quadrature oracle, band-edge limits
#include "giantqed/correction.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace giantqed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_gap(double energy) {
    if (!(std::abs(energy) > 2.0) || !std::isfinite(energy))
        throw DomainError("energy must lie outside the band (|E| > 2J)");
}

void require_branch(double energy, Branch branch) {
    require_gap(energy);
    if ((energy > 0) != (branch == Branch::Upper))
        throw std::invalid_argument("energy sign does not match the requested branch");
}

// (-beta)^d for d >= 0
double parity(int beta, long d) { return (beta == 1 && (d % 2 != 0)) ? -1.0 : 1.0; }

double ipow(double x, long d) { return std::pow(x, static_cast<double>(d)); }

// Returns sum g g' (-beta x)^d over the point pairs of atoms m, m2, plus optionally
// the d-weighted sum used by the edge limit and the derivative.
struct PairSums {
    double plain = 0.0;     // sum g g' (-b)^d x^d
    double weighted = 0.0;  // sum g g' (-b)^d x^d d
};

PairSums pair_sums(const AtomSpec& a, const AtomSpec& b, int beta, double x) {
    PairSums s;
    for (const auto& p : a.points)
        for (const auto& q : b.points) {
            const long d = std::labs(p.site - q.site);
            const double t = p.strength * q.strength * parity(beta, d) * ipow(x, d);
            s.plain += t;
            s.weighted += t * static_cast<double>(d);
        }
    return s;
}

// One vanishing or finite factor 1 + c x^D at the band edge.
struct Order {
    double coeff = 1.0;
    int power = 0;  // power of s = 1/lambda
    void times(double c, long D) {
        if (c > 0) {
            coeff *= 2.0;
        } else {
            coeff *= static_cast<double>(D);
            power += 1;
        }
    }
    void divide(double c, long D) {
        if (c > 0) {
            coeff /= 2.0;
        } else {
            coeff /= static_cast<double>(D);
            power -= 1;
        }
    }
};

}  // namespace

const char* to_string(Branch b) { return b == Branch::Upper ? "upper" : "lower"; }

double localization_length(double energy) {
    require_gap(energy);
    return 1.0 / std::acosh(std::abs(energy) / 2.0);
}

double decay_factor(double energy) {
    require_gap(energy);
    const double h = std::abs(energy) / 2.0;
    const double root = std::sqrt((h - 1.0) * (h + 1.0));
    return 1.0 / (h + root);
}

double edge_denominator(double energy) {
    require_gap(energy);
    const double a = std::abs(energy);
    const double v = std::sqrt((a - 2.0) * (a + 2.0));
    return energy > 0 ? v : -v;
}

double sigma_element(const SystemConfig& config, std::size_t m, std::size_t m2, double energy,
                     Branch branch) {
    require_branch(energy, branch);
    const double J = config.waveguide.hopping;
    const double e = energy / J;
    const double x = decay_factor(e);
    const auto s = pair_sums(config.atoms.at(m), config.atoms.at(m2), sign_of(branch), x);
    return s.plain / (J * edge_denominator(e));
}

Eigen::MatrixXd correction_matrix(const SystemConfig& config, double energy, Branch branch) {
    require_branch(energy, branch);
    const std::size_t n = config.atoms.size();
    const double J = config.waveguide.hopping;
    const double e = energy / J;
    const double x = decay_factor(e);
    const double den = J * edge_denominator(e);
    Eigen::MatrixXd S(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = pair_sums(config.atoms[i], config.atoms[j], sign_of(branch), x).plain / den;
            S(i, j) = v;
            S(j, i) = v;
        }
    return S;
}

Eigen::MatrixXd correction_matrix_derivative(const SystemConfig& config, double energy, Branch branch) {
    require_branch(energy, branch);
    const std::size_t n = config.atoms.size();
    const double J = config.waveguide.hopping;
    const double e = energy / J;
    const double x = decay_factor(e);
    const double s = std::acosh(std::abs(e) / 2.0);
    const double sh = std::sinh(s);
    const double coth = std::cosh(s) / sh;
    // d/dE [x^d / (J den)] = -x^d (d + coth s) / (4 J^2 sinh^2 s)
    const double scale = -1.0 / (4.0 * J * J * sh * sh);
    Eigen::MatrixXd D(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const auto p = pair_sums(config.atoms[i], config.atoms[j], sign_of(branch), x);
            const double v = scale * (p.weighted + coth * p.plain);
            D(i, j) = v;
            D(j, i) = v;
        }
    return D;
}

double sigma_integral(const SystemConfig& config, std::size_t m, std::size_t m2, double energy) {
    require_gap(energy);
    const double J = config.waveguide.hopping;
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    for (const auto& p : config.atoms.at(m).points)
        for (const auto& q : config.atoms.at(m2).points) {
            const double d = static_cast<double>(p.site - q.site);
            // integrand is even in k; the odd (imaginary) part cancels exactly
            auto f = [&](double k) { return std::cos(k * d) / (energy + 2.0 * J * std::cos(k)); };
            double err = 0.0;
            const double v = gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi, 15, 1e-12, &err);
            total += p.strength * q.strength * v / std::numbers::pi;
        }
    return total;
}

double self_energy_single(int n_points, long spacing, double g, double energy, Branch branch) {
    require_branch(energy, branch);
    if (n_points < 1 || spacing < 1) throw std::invalid_argument("bad single-atom parameters");
    const int beta = sign_of(branch);
    const double x = decay_factor(energy);
    double sum = 0.0;
    for (int l = 0; l < n_points; ++l)
        for (int lp = 0; lp < n_points; ++lp) {
            const long d = std::labs(static_cast<long>(l - lp)) * spacing;
            sum += parity(beta, d) * ipow(x, d);
        }
    return g * g * sum / edge_denominator(energy);
}

PairEnergies pair_energies(Topology topology, long dn, long dm, double g, double energy, Branch branch) {
    require_branch(energy, branch);
    const int beta = sign_of(branch);
    const double x = decay_factor(energy);
    const double den = edge_denominator(energy);
    auto tilde = [&](long spacing) { return 2.0 * g * g * (1.0 + parity(beta, spacing) * ipow(x, spacing)) / den; };
    PairEnergies out;
    switch (topology) {
        case Topology::Separate: {
            const double self = tilde(dn);
            out.self_a = out.self_b = self;
            out.mutual = 0.5 * parity(beta, dm) * ipow(x, dm) * (1.0 + parity(beta, dn) * ipow(x, dn)) * self;
            break;
        }
        case Topology::Braided: {
            if (dn <= dm) throw std::invalid_argument("braided pair requires dn > dm");
            out.self_a = out.self_b = tilde(dn);
            // e^{-(dn-dm)/lambda}(e^{(dn-2dm)/lambda} + e^{-dn/lambda} + 2(-b)^dn), expanded
            const double bracket = ipow(x, dm) + ipow(x, 2 * dn - dm) + 2.0 * parity(beta, dn) * ipow(x, dn - dm);
            out.mutual = g * g * parity(beta, dm) * bracket / den;
            break;
        }
        case Topology::Nested: {
            out.self_a = tilde(dn + 2 * dm);
            out.self_b = tilde(dn);
            out.mutual = parity(beta, dm) * ipow(x, dm) * out.self_b;
            break;
        }
        case Topology::SmallAtom:
            throw std::invalid_argument("pair energies need a two-atom topology");
    }
    return out;
}

double chain_limit_sigma(Topology topology, long dn, long dm, double g, double energy, Branch branch,
                         int border) {
    require_branch(energy, branch);
    if (border != 1 && border != -1) throw std::invalid_argument("border label must be +-1");
    const int beta = sign_of(branch);
    const double x = decay_factor(energy);
    const double den = edge_denominator(energy);
    const double gm = border;
    const double num = 1.0 + gm * parity(beta, dm) * ipow(x, dm);
    switch (topology) {
        case Topology::Separate: {
            const double self = 2.0 * g * g * (1.0 + parity(beta, dn) * ipow(x, dn)) / den;
            return num / (1.0 - gm * parity(beta, dn + dm) * ipow(x, dn + dm)) * self;
        }
        case Topology::Braided: {
            if (dn <= 2 * dm) throw std::invalid_argument("braided chain requires dn > 2 dm");
            const long inner = dn - 2 * dm;
            const double self = 2.0 * g * g * (1.0 + parity(beta, inner) * ipow(x, inner)) / den;
            return num / (1.0 - gm * parity(beta, dn - dm) * ipow(x, dn - dm)) * self;
        }
        case Topology::Nested:
            return num / (1.0 - gm * parity(beta, dm) * ipow(x, dm)) * 2.0 * g * g / den;
        case Topology::SmallAtom:
            break;
    }
    throw std::invalid_argument("chain limit needs separate, braided or nested");
}

double edge_limit_form(const SystemConfig& config, const Eigen::VectorXd& u, Branch branch) {
    const int beta = sign_of(branch);
    const double J = config.waveguide.hopping;
    const std::size_t n = config.atoms.size();
    if (static_cast<std::size_t>(u.size()) != n) throw std::invalid_argument("amplitude size mismatch");
    double lead = 0.0, scale = 0.0;
    for (std::size_t m = 0; m < n; ++m)
        for (const auto& p : config.atoms[m].points) {
            lead += u(m) * p.strength * parity(beta, std::labs(p.site));
            scale += std::abs(u(m) * p.strength);
        }
    if (std::abs(lead) > 1e-12 * std::max(scale, 1e-300)) return beta * kInf;
    double first = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            first += u(i) * u(j) * pair_sums(config.atoms[i], config.atoms[j], beta, 1.0).weighted;
    return -first / (2.0 * beta * J);
}

EdgeSpectrum edge_limit_spectrum(const SystemConfig& config, Branch branch) {
    const int beta = sign_of(branch);
    const double J = config.waveguide.hopping;
    const std::size_t n = config.atoms.size();
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    double scale = 0.0;
    Eigen::MatrixXd C(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& p : config.atoms[i].points) {
            w(i) += p.strength * parity(beta, std::labs(p.site));
            scale += std::abs(p.strength);
        }
        for (std::size_t j = 0; j < n; ++j)
            C(i, j) = -pair_sums(config.atoms[i], config.atoms[j], beta, 1.0).weighted / (2.0 * beta * J);
        C(i, i) += config.atoms[i].detuning - 2.0 * beta * J;
    }
    EdgeSpectrum out;
    if (w.norm() <= 1e-12 * std::max(scale, 1e-300)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.limits.push_back(es.eigenvalues()(i));
        return out;
    }
    // finite limits: C compressed onto the complement of w
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
    const Eigen::MatrixXd Q = qr.householderQ();
    if (n > 1) {
        const Eigen::MatrixXd Qp = Q.rightCols(static_cast<Eigen::Index>(n - 1));
        const Eigen::MatrixXd B = Qp.transpose() * C * Qp;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.limits.push_back(es.eigenvalues()(i));
    }
    if (beta == 1)
        out.limits.push_back(kInf);
    else
        out.limits.insert(out.limits.begin(), -kInf);
    return out;
}

double self_energy_single_edge(int n_points, long spacing, double g, Branch branch) {
    const SystemConfig c = build_single_atom(n_points, spacing, g, 0.0);
    Eigen::VectorXd u(1);
    u << 1.0;
    return edge_limit_form(c, u, branch);
}

double chain_limit_edge(Topology topology, long dn, long dm, double g, Branch branch, int border) {
    if (border != 1 && border != -1) throw std::invalid_argument("border label must be +-1");
    const int beta = sign_of(branch);
    const double gm = border;
    Order o;
    o.times(gm * parity(beta, dm), dm);
    long inner = dn;
    switch (topology) {
        case Topology::Separate:
            o.divide(-gm * parity(beta, dn + dm), dn + dm);
            break;
        case Topology::Braided:
            if (dn <= 2 * dm) throw std::invalid_argument("braided chain requires dn > 2 dm");
            inner = dn - 2 * dm;
            o.divide(-gm * parity(beta, dn - dm), dn - dm);
            break;
        case Topology::Nested:
            o.divide(-gm * parity(beta, dm), dm);
            inner = 0;
            break;
        case Topology::SmallAtom:
            throw std::invalid_argument("chain limit needs separate, braided or nested");
    }
    if (inner > 0) o.times(parity(beta, inner), inner);
    // 2 g^2 (factors) / (2 beta s)
    const int net = o.power - 1;
    if (net < 0) return beta * kInf;
    if (net > 0) return 0.0;
    return 2.0 * g * g * o.coeff / (2.0 * beta);
}

}  // namespace giantqed

// commands.cpp — command implementations and CSV/JSON emission
#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <variant>

#include "giantqed/boundstates.hpp"
#include "giantqed/effective.hpp"
#include "giantqed/oracle.hpp"

namespace giantqed::cli {

using nlohmann::json;

namespace {

using Cell = std::variant<double, long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    json meta = json::object();
};

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return fmt(*d);
    if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "1" : "0";
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(fmt(*d));
    if (const auto* l = std::get_if<long>(&c)) return *l;
    if (const auto* b = std::get_if<bool>(&c)) return *b;
    return std::get<std::string>(c);
}

void emit(const RunSpec& spec, const Table& t) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!spec.out.empty() && spec.out != "-") {
        file.open(spec.out);
        if (!file) throw ConfigError("cannot write output '" + spec.out + "'");
        os = &file;
    }
    if (spec.format == "json") {
        json rows = json::array();
        for (const auto& r : t.rows) {
            json o = json::object();
            for (std::size_t i = 0; i < r.size(); ++i) o[t.columns[i]] = json_cell(r[i]);
            rows.push_back(std::move(o));
        }
        json doc = {{"command", spec.command}, {"meta", t.meta}, {"rows", rows}};
        *os << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) *os << (i ? "," : "") << t.columns[i];
    *os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) *os << (i ? "," : "") << csv_cell(r[i]);
        *os << '\n';
    }
}

std::string label_text(const StateLabel& l) { return std::string(to_string(l.kind)) + ":" + std::to_string(l.value); }

const Layout& need_layout(const RunSpec& spec) {
    if (!spec.doc.layout) throw ConfigError("command '" + spec.command + "' needs a builder shortcut (a 'preset' key)");
    return *spec.doc.layout;
}

std::vector<double> need_grid(const RunSpec& spec) {
    if (!spec.grid) throw ConfigError("command '" + spec.command + "' needs --grid or run.grid");
    return spec.grid->values();
}

// Pair and single-atom layouts go to the specialised solvers, which attach parity/sign labels.
std::vector<BoundState> solve_layout(const std::optional<Layout>& layout, const SystemConfig& c, const SolveOptions& opt = {}) {
    if (layout && layout->is_pair()) return solve_two_atoms(c, opt);
    if (c.atoms.size() == 1) return solve_single_atom(c, opt);
    return solve_general(c, opt);
}

Table bound_states_table(const RunSpec& spec) {
    SolveOptions opt;
    opt.with_profiles = false;
    const auto states = solve_layout(spec.doc.layout, spec.doc.config, opt);
    Table t;
    t.columns = {"index", "branch", "label", "E", "mixing_angle", "localization_length", "near_degenerate", "residual"};
    const std::size_t n = spec.doc.config.atoms.size();
    for (std::size_t m = 0; m < n; ++m) t.columns.push_back("u" + std::to_string(m));
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto& s = states[i];
        std::vector<Cell> row = {static_cast<long>(i), std::string(to_string(s.branch)), label_text(s.label), s.energy,
                                 s.mixing_angle, s.localization_length, s.near_degenerate, s.residual};
        for (std::size_t m = 0; m < n; ++m) row.push_back(s.atomic_amplitudes(static_cast<Eigen::Index>(m)));
        t.rows.push_back(std::move(row));
    }
    t.meta["atoms"] = n;
    return t;
}

Table thresholds_table(const RunSpec& spec) {
    const Layout& l = need_layout(spec);
    const double delta = l.detuning / l.hopping;
    ThresholdSummary sum;
    if (l.kind == "single_atom")
        sum = thresholds(Family::SingleAtom, Topology::SmallAtom, l.points, l.dn, 1, delta);
    else if (l.kind == "small_atom")
        sum = thresholds(Family::SingleAtom, Topology::SmallAtom, 1, 1, 1, delta);
    else if (l.kind == "ssh_chain")
        throw ConfigError("thresholds are tabulated for uniform layouts only, not 'ssh_chain'");
    else
        sum = thresholds(l.is_pair() ? Family::Pair : Family::Chain, l.topology(), 0, l.dn, l.dm, delta);
    Table t;
    t.columns = {"branch", "label", "exists_always", "threshold_g", "formula", "uncovered", "approximate", "note"};
    for (const auto& r : sum.reports)
        t.rows.push_back({std::string(to_string(r.branch)), label_text(r.label), r.exists_always,
                          r.threshold_g ? *r.threshold_g * l.hopping : std::numeric_limits<double>::quiet_NaN(),
                          r.formula_id, r.uncovered, r.approximate, r.note});
    if (sum.crossing_energy) {
        t.meta["crossing_energy"] = *sum.crossing_energy * l.hopping;
        const double gc = sum.crossing_coupling ? *sum.crossing_coupling * l.hopping : std::numeric_limits<double>::quiet_NaN();
        t.meta["crossing_coupling"] = sum.crossing_coupling ? json(gc) : json(nullptr);
        t.rows.push_back({std::string("upper"), std::string("crossing:0"), false, gc, std::string("braided_crossing"), false,
                          false, "energy=" + fmt(*sum.crossing_energy * l.hopping)});
    }
    return t;
}

Table sweep_g_table(const RunSpec& spec) {
    const Layout& l = need_layout(spec);
    Table t;
    t.columns = {"g", "branch", "label", "E"};
    SolveOptions opt;
    opt.with_profiles = false;
    for (double g : need_grid(spec))
        for (const auto& s : solve_layout(l, build(l, g), opt))
            t.rows.push_back({g, std::string(to_string(s.branch)), label_text(s.label), s.energy});
    return t;
}

Table metaband_table(const RunSpec& spec) {
    const Layout& l = need_layout(spec);
    if (!l.is_chain() || l.kind == "ssh_chain") throw ConfigError("metaband needs a uniform chain layout");
    Table t;
    t.columns = {"g", "border_label", "E", "flag"};
    const double J = l.hopping;
    for (double g : need_grid(spec))
        for (Branch b : {Branch::Lower, Branch::Upper}) {
            const auto mb = metaband_borders(l.topology(), l.dn, l.dm, g / J, l.detuning / J, b);
            std::string flag = mb.approximate ? "approximate" : "ok";
            if (mb.partially_merged) flag += "|partially_merged";
            for (const auto& br : mb.borders) t.rows.push_back({g, static_cast<long>(br.label), br.energy * J, flag});
        }
    return t;
}

Table effective_table(const RunSpec& spec) {
    const Layout& l = need_layout(spec);
    if (l.detuning != 0.0) throw ConfigError("effective models are defined at zero detuning only");
    const double J = l.hopping, g = l.g / J;
    EffectiveChain chain;
    if (l.kind == "ssh_chain")
        chain = ssh_chain(l.atoms, l.dn, l.dm, g, l.mu, spec.branch);
    else if (l.is_chain())
        chain = uniform_chain(l.topology(), l.atoms, l.dn, l.dm, g, spec.branch);
    else if (l.is_pair())
        chain = uniform_chain(l.topology(), 2, l.dn, l.dm, g, spec.branch);
    else
        throw ConfigError("effective models need a pair or chain layout");
    const MetabandModel mb = analyze_metaband(chain);
    const ChainSpectrum sp = chain_spectrum(chain);
    Table t;
    t.columns = {"index", "energy", "edge_weight", "edge_state"};
    for (Eigen::Index i = 0; i < sp.energies.size(); ++i) {
        double weight = 0.0;
        bool edge = false;
        for (const auto& e : mb.edge_states)
            if (e.index == static_cast<std::size_t>(i)) {
                weight = e.edge_weight;
                edge = true;
            }
        t.rows.push_back({static_cast<long>(i), sp.energies(i) * J, weight, edge});
    }
    json hops = json::array();
    for (double h : chain.hoppings) hops.push_back(h * J);
    t.meta = {{"branch", to_string(spec.branch)}, {"center", mb.center * J}, {"width", mb.width * J},
              {"gap", mb.gap * J}, {"hoppings", hops}, {"edge_states", mb.edge_states.size()}};
    return t;
}

Table scattering_table(const RunSpec& spec, std::ostream& log) {
    const Sweep sw = reflectance_sweep(spec.doc.config, need_grid(spec), spec.axis, spec.route);
    Table t;
    t.columns = {"k", "delta_k", "re_t", "im_t", "re_r", "im_r", "T", "R"};
    json errors = json::array();
    for (const auto& p : sw.points) {
        t.rows.push_back({p.k, p.detuning, p.t.real(), p.t.imag(), p.r.real(), p.r.imag(), p.T, p.R});
        if (p.error) {
            log << "k=" << fmt(p.k) << ": " << *p.error << '\n';
            errors.push_back({{"k", p.k}, {"error", *p.error}});
        }
    }
    for (const auto& n : sw.notices) log << n << '\n';
    t.meta = {{"errors", errors}, {"notices", sw.notices}};
    return t;
}

Table wavefunction_table(const RunSpec& spec) {
    const auto states = solve_layout(spec.doc.layout, spec.doc.config);
    if (spec.state < 0 || static_cast<std::size_t>(spec.state) >= states.size())
        throw ConfigError("state index " + std::to_string(spec.state) + " out of range (" + std::to_string(states.size()) +
                          " bound states)");
    const BoundState& s = states[static_cast<std::size_t>(spec.state)];
    Table t;
    t.columns = {"site", "amplitude"};
    const auto& prof = s.photonic_profile;
    for (std::size_t i = 0; i < prof.amplitudes.size(); ++i)
        t.rows.push_back({prof.first_site + static_cast<long>(i), prof.amplitudes[i]});
    std::vector<double> u(s.atomic_amplitudes.data(), s.atomic_amplitudes.data() + s.atomic_amplitudes.size());
    t.meta = {{"energy", s.energy},       {"branch", to_string(s.branch)}, {"label", label_text(s.label)},
              {"mixing_angle", s.mixing_angle}, {"atomic_amplitudes", u},   {"capped", prof.capped}};
    return t;
}

Table oracle_table(const OracleReport& r, const Tolerances& tol) {
    Table t;
    t.columns = {"quantity", "value", "tolerance", "pass"};
    auto add = [&](const char* name, double v, double limit) { t.rows.push_back({std::string(name), v, limit, v <= limit}); };
    add("max_energy_deviation", r.max_energy_deviation, tol.energy);
    add("max_overlap_defect", r.max_overlap_defect, tol.overlap);
    add("max_amplitude_deviation", r.max_amplitude_deviation, tol.amplitude);
    add("max_unitarity_deviation", r.max_unitarity_deviation, tol.unitarity);
    t.rows.push_back({std::string("state_count_match"), static_cast<double>(r.analytic_states == r.lattice_states), 1.0,
                      r.analytic_states == r.lattice_states});
    t.meta = {{"sites", r.sites},
              {"analytic_states", r.analytic_states},
              {"lattice_states", r.lattice_states},
              {"scattering_points", r.scattering_points},
              {"lattice_residual", r.lattice_residual},
              {"notes", r.notes},
              {"passed", r.passed}};
    return t;
}

Branch parse_branch(const std::string& s) {
    if (s == "lower") return Branch::Lower;
    if (s == "upper") return Branch::Upper;
    throw ConfigError("branch must be 'lower' or 'upper', got '" + s + "'");
}

GridAxis parse_axis(const std::string& s) {
    if (s == "k") return GridAxis::WaveVector;
    if (s == "delta_k") return GridAxis::Detuning;
    throw ConfigError("axis must be 'k' or 'delta_k', got '" + s + "'");
}

Route parse_route(const std::string& s) {
    if (s == "matrix") return Route::Matrix;
    if (s == "two-atom") return Route::TwoAtom;
    if (s == "lattice") return Route::Lattice;
    throw ConfigError("route must be 'matrix', 'two-atom' or 'lattice', got '" + s + "'");
}

// analytic dressed state sampled on the lattice, atoms appended
Eigen::VectorXd analytic_vector(const BoundState& s, const LatticeHamiltonian& h) {
    Eigen::VectorXd v(h.dimension());
    for (long j = 0; j < h.n_sites; ++j) v(j) = s.photonic_profile.at(j - h.site_offset);
    v.tail(static_cast<Eigen::Index>(h.n_atoms)) = std::cos(s.mixing_angle) * s.atomic_amplitudes;
    return v.normalized();
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"bound-states", "thresholds", "sweep-g",     "metaband",
                                                   "effective",    "scattering", "wavefunction", "oracle-check"};
    return names;
}

RunSpec make_spec(std::string command, Document doc, const Overrides& given) {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
        throw ConfigError("unknown command '" + command + "'");
    RunSpec s;
    s.command = std::move(command);
    const RunDefaults d = doc.run;
    s.doc = std::move(doc);
    // a document grid is a coupling sweep; oracle-check samples k unless told otherwise
    const auto doc_grid = s.command == "oracle-check" ? std::nullopt : d.grid;
    if (auto g = given.grid ? given.grid : doc_grid) s.grid = parse_grid(*g);
    if (auto a = given.axis ? given.axis : d.axis) s.axis = parse_axis(*a);
    if (auto b = given.branch ? given.branch : d.branch) s.branch = parse_branch(*b);
    if (auto r = given.route ? given.route : d.route) s.route = parse_route(*r);
    if (auto n = given.sites ? given.sites : d.sites) s.sites = *n;
    if (auto st = given.state ? given.state : d.state) s.state = *st;
    if (s.sites < 3) throw ConfigError("--sites must be at least 3");
    return s;
}

OracleReport oracle_check(const RunSpec& spec) {
    const SystemConfig& c = spec.doc.config;
    const long dim = spec.sites + static_cast<long>(c.atoms.size());
    if (dim > spec.max_dimension && !spec.force)
        throw ConfigError("lattice dimension " + std::to_string(dim) + " exceeds " + std::to_string(spec.max_dimension) +
                          "; pass --force to run anyway");
    OracleReport rep;
    rep.sites = spec.sites;
    const double J = c.waveguide.hopping;
    const double cut = 2.0 * J * (1.0 + 10.0 / static_cast<double>(spec.sites));

    std::vector<BoundState> analytic;
    for (auto& s : solve_general(c))
        if (std::abs(s.energy) > cut) analytic.push_back(std::move(s));
    const LatticeHamiltonian h = build_matrix(c, spec.sites, true);
    for (const auto& w : h.warnings) rep.notes.push_back(w);
    const OracleResult res = diagonalize_outside(h, cut);
    rep.lattice_residual = res.residual;
    rep.analytic_states = analytic.size();
    rep.lattice_states = res.eigenvalues.size();
    if (rep.analytic_states != rep.lattice_states) rep.notes.push_back("bound-state counts differ");

    const std::size_t n = std::min(analytic.size(), res.eigenvalues.size());
    for (std::size_t i = 0; i < n; ++i) {
        rep.max_energy_deviation = std::max(rep.max_energy_deviation, std::abs(analytic[i].energy - res.eigenvalues[i]) / J);
        // project onto the lattice eigenvectors of the (near-)degenerate group around this energy
        const double group = std::max(spec.tolerances.energy * J, 1e-9 * J);
        const Eigen::VectorXd a = analytic_vector(analytic[i], h);
        double proj = 0.0;
        for (std::size_t q = 0; q < res.eigenvalues.size(); ++q)
            if (std::abs(res.eigenvalues[q] - res.eigenvalues[i]) <= group) {
                const double d = res.eigenvectors->col(static_cast<Eigen::Index>(q)).normalized().dot(a);
                proj += d * d;
            }
        rep.max_overlap_defect = std::max(rep.max_overlap_defect, 1.0 - std::sqrt(proj));
    }

    const bool two_atom = c.atoms.size() == 2 && c.atoms[0].points.size() == 2 && c.atoms[1].points.size() == 2;
    const int points = spec.grid ? spec.grid->count : 200;
    for (int i = 0; i < points && !c.atoms.empty(); ++i) {
        double k = spec.grid ? spec.grid->values()[static_cast<std::size_t>(i)]
                             : std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(points);
        if (spec.grid && spec.axis == GridAxis::Detuning) {
            const double x = -(c.atoms[0].detuning + k) / (2.0 * J);
            if (!(x > -1.0 && x < 1.0)) continue;
            k = std::acos(x);
        }
        if (!(k > 0.0 && k < std::numbers::pi)) continue;
        Amplitudes m, e;
        std::optional<Amplitudes> t2;
        for (int attempt = 0;; ++attempt) {
            try {
                m = amplitudes(c, k);
                e = scattering_exact(c, k);
                if (two_atom) t2 = two_atom_amplitudes(c, k);
                break;
            } catch (const NumericError&) {
                if (attempt > 0) throw;
                k += 1e-9;
                rep.notes.push_back("singular point perturbed at k=" + fmt(k - 1e-9));
            }
        }
        ++rep.scattering_points;
        double dev = std::max(std::abs(m.t - e.t), std::abs(m.r - e.r));
        if (t2) dev = std::max({dev, std::abs(m.t - t2->t), std::abs(m.r - t2->r)});
        rep.max_amplitude_deviation = std::max(rep.max_amplitude_deviation, dev);
        for (const auto& a : {m, e})
            rep.max_unitarity_deviation = std::max(rep.max_unitarity_deviation, std::abs(std::norm(a.t) + std::norm(a.r) - 1.0));
    }

    const Tolerances& tol = spec.tolerances;
    rep.passed = rep.analytic_states == rep.lattice_states && rep.max_energy_deviation <= tol.energy &&
                 rep.max_overlap_defect <= tol.overlap && rep.max_amplitude_deviation <= tol.amplitude &&
                 rep.max_unitarity_deviation <= tol.unitarity;
    return rep;
}

int run(const RunSpec& spec, std::ostream& log) {
    try {
        if (spec.format != "csv" && spec.format != "json") throw ConfigError("format must be 'csv' or 'json'");
        for (const auto& w : warnings(spec.doc.config)) log << "warning: " << w << '\n';
        const std::string& c = spec.command;
        if (c == "oracle-check") {
            const OracleReport r = oracle_check(spec);
            for (const auto& n : r.notes) log << n << '\n';
            emit(spec, oracle_table(r, spec.tolerances));
            return r.passed ? kOk : kToleranceExceeded;
        }
        Table t;
        if (c == "bound-states")
            t = bound_states_table(spec);
        else if (c == "thresholds")
            t = thresholds_table(spec);
        else if (c == "sweep-g")
            t = sweep_g_table(spec);
        else if (c == "metaband")
            t = metaband_table(spec);
        else if (c == "effective")
            t = effective_table(spec);
        else if (c == "scattering")
            t = scattering_table(spec, log);
        else if (c == "wavefunction")
            t = wavefunction_table(spec);
        else
            throw ConfigError("unknown command '" + c + "'");
        if (!spec.doc.comment.empty()) t.meta["comment"] = spec.doc.comment;
        emit(spec, t);
        return kOk;
    } catch (const std::invalid_argument& e) {  // ConfigError and argument checks
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {  // NumericError, DomainError, LAPACK failures
        log << "numeric failure: " << e.what() << '\n';
        return kNumericFailure;
    }
}

}  // namespace giantqed::cli

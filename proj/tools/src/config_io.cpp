// config_io.cpp — JSON configuration parsing and layout construction
#include "config_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#ifndef GIANTQED_PRESET_DIR
#define GIANTQED_PRESET_DIR "presets"
#endif

namespace giantqed::cli {

using nlohmann::json;

namespace {

template <class T>
T field(const json& obj, const char* key, const std::string& where, std::optional<T> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("missing field '" + where + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("field '" + where + key + "' has the wrong type");
    }
}

template <class T>
std::optional<T> maybe(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    return field<T>(obj, key, where);
}

const std::vector<std::string> kLayoutKinds = {"single_atom",    "small_atom",    "separate_pair", "braided_pair",
                                               "nested_pair",    "separate_chain", "braided_chain", "nested_chain",
                                               "ssh_chain"};

// builder shortcut: the layout keys sit at the top level next to "preset"
Layout parse_layout(const json& j) {
    Layout l;
    l.kind = field<std::string>(j, "preset", "");
    if (std::find(kLayoutKinds.begin(), kLayoutKinds.end(), l.kind) == kLayoutKinds.end())
        throw ConfigError("field 'preset' has unknown value '" + l.kind + "'");
    l.g = field<double>(j, "g", "");
    l.detuning = field<double>(j, "delta", "", 0.0);
    l.hopping = field<double>(j, "J", "", 1.0);
    if (l.kind == "single_atom") {
        l.points = field<int>(j, "n_c", "");
        l.dn = field<long>(j, "dn", "");
    } else if (l.kind != "small_atom") {
        l.dn = field<long>(j, "dn", "");
        l.dm = field<long>(j, "dm", "");
    }
    if (l.is_chain()) l.atoms = field<int>(j, "n_a", "");
    if (l.kind == "ssh_chain") l.mu = field<double>(j, "mu", "");
    if (!(l.hopping > 0.0)) throw ConfigError("field 'J' must be positive");
    return l;
}

SystemConfig parse_explicit(const json& j) {
    SystemConfig c;
    if (j.contains("waveguide")) {
        const json& w = j.at("waveguide");
        c.waveguide.hopping = field<double>(w, "J", "waveguide.", 1.0);
        c.waveguide.band_center = field<double>(w, "omega_c", "waveguide.", 0.0);
        if (!(c.waveguide.hopping > 0.0)) throw ConfigError("field 'waveguide.J' must be positive");
    }
    const json& atoms = j.at("atoms");
    if (!atoms.is_array()) throw ConfigError("field 'atoms' must be an array");
    for (std::size_t m = 0; m < atoms.size(); ++m) {
        const std::string where = "atoms[" + std::to_string(m) + "].";
        AtomSpec a;
        a.detuning = field<double>(atoms[m], "delta", where, 0.0);
        const json& pts = atoms[m].contains("points") ? atoms[m].at("points") : json();
        if (!pts.is_array()) throw ConfigError("field '" + where + "points' must be an array");
        for (std::size_t l = 0; l < pts.size(); ++l) {
            const std::string pw = where + "points[" + std::to_string(l) + "].";
            a.points.push_back({field<long>(pts[l], "site", pw), field<double>(pts[l], "g", pw)});
        }
        c.atoms.push_back(std::move(a));
    }
    require_valid(c);
    return c;
}

}  // namespace

bool Layout::is_pair() const { return kind.size() > 5 && kind.substr(kind.size() - 5) == "_pair"; }
bool Layout::is_chain() const { return kind.size() > 6 && kind.substr(kind.size() - 6) == "_chain"; }

Topology Layout::topology() const {
    if (kind.rfind("separate", 0) == 0 || kind == "ssh_chain") return Topology::Separate;
    if (kind.rfind("braided", 0) == 0) return Topology::Braided;
    if (kind.rfind("nested", 0) == 0) return Topology::Nested;
    return Topology::SmallAtom;
}

SystemConfig build(const Layout& layout) { return build(layout, layout.g); }

SystemConfig build(const Layout& l, double g) {
    SystemConfig c;
    if (l.kind == "single_atom")
        c = build_single_atom(l.points, l.dn, g, l.detuning);
    else if (l.kind == "small_atom")
        c = build_single_atom(1, 1, g, l.detuning);
    else if (l.kind == "ssh_chain")
        c = build_ssh_chain(l.atoms, l.dn, l.dm, g, l.mu, l.detuning);
    else if (l.is_pair())
        c = build_two_atoms(l.topology(), l.dn, l.dm, g, l.detuning);
    else if (l.is_chain())
        c = build_chain(l.topology(), l.atoms, l.dn, l.dm, g, l.detuning);
    else
        throw ConfigError("unknown layout kind '" + l.kind + "'");
    c.waveguide.hopping = l.hopping;
    return c;
}

Document parse_document(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
    Document d;
    d.comment = field<std::string>(j, "comment", "", std::string());
    const bool has_layout = j.contains("preset"), has_atoms = j.contains("atoms");
    if (has_layout == has_atoms) throw ConfigError("configuration needs exactly one of 'preset' or 'atoms'");
    if (has_layout) {
        d.layout = parse_layout(j);
        d.config = build(*d.layout);
    } else {
        d.config = parse_explicit(j);
    }
    if (j.contains("run")) {
        const json& r = j.at("run");
        if (!r.is_object()) throw ConfigError("field 'run' must be an object");
        d.run.grid = maybe<std::string>(r, "grid", "run.");
        d.run.axis = maybe<std::string>(r, "axis", "run.");
        d.run.branch = maybe<std::string>(r, "branch", "run.");
        d.run.route = maybe<std::string>(r, "route", "run.");
        d.run.sites = maybe<long>(r, "sites", "run.");
        d.run.state = maybe<int>(r, "state", "run.");
    }
    return d;
}

Document load_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("configuration '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_document(j);
}

std::filesystem::path preset_directory() {
    if (const char* env = std::getenv("GIANTQED_PRESETS"); env && *env) return env;
    return GIANTQED_PRESET_DIR;
}

Document load_preset(const std::string& name) {
    std::filesystem::path p(name);
    if (p.extension() != ".json" && p.parent_path().empty()) p = preset_directory() / (name + ".json");
    if (!std::filesystem::exists(p)) throw ConfigError("unknown preset '" + name + "'");
    return load_document(p);
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    if (!std::filesystem::is_directory(preset_directory())) return out;
    for (const auto& e : std::filesystem::directory_iterator(preset_directory()))
        if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

json to_json(const SystemConfig& c) {
    json atoms = json::array();
    for (const auto& a : c.atoms) {
        json pts = json::array();
        for (const auto& p : a.points) pts.push_back({{"site", p.site}, {"g", p.strength}});
        atoms.push_back({{"delta", a.detuning}, {"points", pts}});
    }
    return {{"waveguide", {{"J", c.waveguide.hopping}, {"omega_c", c.waveguide.band_center}}}, {"atoms", atoms}};
}

std::vector<double> Grid::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        v[static_cast<std::size_t>(i)] = log ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                             : start + f * (stop - start);
    }
    if (count > 0) v.back() = stop;
    return v;
}

Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto next = text.find(':', pos);
        parts.push_back(text.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (parts.size() < 3 || parts.size() > 4) throw ConfigError("grid must look like start:stop:count[:log]");
    Grid g;
    try {
        std::size_t used = 0;
        g.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("start");
        g.stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("stop");
        g.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("count");
    } catch (const std::exception&) {
        throw ConfigError("grid '" + text + "' has a malformed number");
    }
    if (parts.size() == 4) {
        if (parts[3] != "log") throw ConfigError("grid spacing must be 'log' when given");
        g.log = true;
    }
    if (g.count < 2) throw ConfigError("grid count must be at least 2");
    if (g.log && !(g.start > 0.0 && g.stop > 0.0)) throw ConfigError("log grid needs positive bounds");
    if (!std::isfinite(g.start) || !std::isfinite(g.stop)) throw ConfigError("grid bounds must be finite");
    return g;
}

}  // namespace giantqed::cli

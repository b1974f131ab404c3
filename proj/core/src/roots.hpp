// roots.hpp — bracketed root of a decreasing function on one side of the band
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "giantqed/boundstates.hpp"

namespace giantqed::detail {

struct GapRoot {
    double energy = 0.0;
    bool at_edge = false;  // root lies between the edge and the guard point
};

// f strictly decreasing in E on the branch domain, edge_value = lim f at |E| -> 2.
// Upper: root exists iff edge_value > 0. Lower: iff edge_value < 0.
template <class F>
std::optional<GapRoot> gap_root(F&& f, Branch branch, double edge_value, double far) {
    const bool upper = branch == Branch::Upper;
    if (upper ? !(edge_value > 0.0) : !(edge_value < 0.0)) return std::nullopt;
    const double near = 2.0 * (1.0 + kEdgeGuard);
    double a, b;
    if (upper) {
        a = near;
        b = far;
    } else {
        a = -far;
        b = -near;
    }
    double fa = f(a), fb = f(b);
    if (upper && fa <= 0.0) return GapRoot{a, true};
    if (!upper && fb >= 0.0) return GapRoot{b, true};
    for (int grow = 0; upper ? fb > 0.0 : fa < 0.0; ++grow) {
        if (grow > 60) throw NumericError("could not bracket a bound-state root");
        if (upper) {
            b = 2.0 * b;
            fb = f(b);
        } else {
            a = 2.0 * a;
            fa = f(a);
        }
    }
    if (fa == 0.0) return GapRoot{a, false};
    if (fb == 0.0) return GapRoot{b, false};
    std::uintmax_t iters = 300;
    const auto r = boost::math::tools::toms748_solve(
        f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iters);
    return GapRoot{0.5 * (r.first + r.second), false};
}

}  // namespace giantqed::detail

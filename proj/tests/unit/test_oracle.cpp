// test_oracle.cpp — finite-lattice diagonalization and lattice scattering
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "giantqed/boundstates.hpp"
#include "giantqed/oracle.hpp"

using namespace giantqed;

TEST(Lattice, MatrixStructure) {
    const auto c = build_two_atoms(Topology::Braided, 3, 1, 0.7, 0.25);
    const auto h = build_matrix(c, 41);
    ASSERT_EQ(h.dimension(), 43);
    EXPECT_EQ((h.matrix - h.matrix.transpose()).norm(), 0.0);
    for (Eigen::Index j = 0; j + 1 < 41; ++j) EXPECT_EQ(h.matrix(j, j + 1), -1.0);
    EXPECT_EQ(h.matrix(41, 41), 0.25);
    for (const auto& p : c.atoms[1].points) EXPECT_EQ(h.matrix(42, p.site + h.site_offset), 0.7);
    // centered: equal margins up to one site
    const long left = c.min_site() + h.site_offset, right = 40 - (c.max_site() + h.site_offset);
    EXPECT_LE(std::abs(left - right), 1);
    EXPECT_THROW(build_matrix(c, 3), ConfigError);
}

TEST(Lattice, ReflectionInvariantSpectrum) {
    const auto c = build_two_atoms(Topology::Separate, 4, 3, 1.1, 0.0);
    const auto a = diagonalize(build_matrix(c, 201), false);
    const auto b = diagonalize(build_matrix(reflected(c), 201), false);
    ASSERT_EQ(a.eigenvalues.size(), b.eigenvalues.size());
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) EXPECT_NEAR(a.eigenvalues[i], b.eigenvalues[i], 1e-12);
}

TEST(Lattice, WindowedSolverMatchesFullSpectrum) {
    const auto h = build_matrix(build_chain(Topology::Nested, 4, 2, 1, 2.0, 0.0), 301);
    const auto full = diagonalize(h, true);
    const auto part = diagonalize_outside(h, 2.1);
    std::vector<double> expect;
    for (double e : full.eigenvalues)
        if (std::abs(e) > 2.1) expect.push_back(e);
    ASSERT_EQ(part.eigenvalues.size(), expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) EXPECT_NEAR(part.eigenvalues[i], expect[i], 1e-11);
    EXPECT_LT(part.residual, 1e-10);
    EXPECT_LT(full.residual, 1e-10);
}

TEST(BoundStatesExact, SmallAtomAgreesWithAnalytic) {
    const auto v = bound_states_exact(build_single_atom(1, 1, 1.0, 0.0), 1601);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_NEAR(v[0].energy, -2.058171027271491, 1e-4);
    EXPECT_NEAR(v[1].energy, 2.058171027271491, 1e-4);
    for (const auto& s : v) EXPECT_LT(s.residual, 1e-10);
}

TEST(BoundStatesExact, SshChainCountsAndMidGap) {
    const auto v = bound_states_exact(build_ssh_chain(10, 2, 1, 10.0, 0.5, 0.0), 1601);
    ASSERT_EQ(v.size(), 20u);
    int mid = 0;
    for (const auto& s : v) mid += std::abs(s.energy + 11.30534) < 0.15;
    EXPECT_EQ(mid, 2);
}

TEST(BoundStatesExact, AgreesWithAnalyticStatesAndProfiles) {
    for (const auto& c : {build_single_atom(2, 6, 1.0, 0.0), build_two_atoms(Topology::Nested, 8, 8, 3.0, 0.0),
                          build_two_atoms(Topology::Separate, 8, 8, 3.0, 0.0), build_chain(Topology::Separate, 10, 1, 1, 5.0, 0.0),
                          build_single_atom(2, 700, 2.0, 0.0)}) {  // the last one is too wide for the banded route
        const auto exact = bound_states_exact(c, 1601);
        const auto analytic = solve_general(c);
        ASSERT_EQ(exact.size(), analytic.size());
        for (std::size_t i = 0; i < exact.size(); ++i) {
            EXPECT_NEAR(exact[i].energy, analytic[i].energy, 1e-4);
            const auto& a = analytic[i];
            const double cos_t = std::cos(a.mixing_angle);
            EXPECT_NEAR(exact[i].atomic_amplitudes.norm(), cos_t, 1e-6);
            double dot = 0.0, na = cos_t * cos_t;
            const auto& p = exact[i].photonic_profile;
            for (std::size_t j = 0; j < p.amplitudes.size(); ++j) {
                const double f = a.photonic_profile.at(p.first_site + static_cast<long>(j));
                dot += f * p.amplitudes[j];
                na += f * f;
            }
            dot += cos_t * a.atomic_amplitudes.dot(exact[i].atomic_amplitudes);
            EXPECT_GE(std::abs(dot) / std::sqrt(na), 1.0 - 1e-6) << "state " << i;
        }
    }
}

TEST(BoundStatesExact, NoStatesWithoutCoupling) {
    EXPECT_TRUE(bound_states_exact(build_two_atoms(Topology::Separate, 2, 2, 0.0, 0.0), 201).empty());
}

TEST(ScatteringExact, UnitarityAndDomain) {
    const auto c = build_chain(Topology::Braided, 3, 5, 1, 0.8, 0.1);
    for (int i = 0; i < 200; ++i) {
        const double k = std::numbers::pi * (i + 0.5) / 200.0;
        const auto a = scattering_exact(c, k);
        EXPECT_NEAR(std::norm(a.t) + std::norm(a.r), 1.0, 1e-10) << k;
    }
    EXPECT_THROW(scattering_exact(c, 0.0), DomainError);
    EXPECT_THROW(scattering_exact(c, std::numbers::pi), DomainError);
}

TEST(ScatteringExact, SmallAtomResonanceReflectsFully) {
    // resonant small atom at the band center: full reflection
    const auto a = scattering_exact(build_single_atom(1, 1, 0.3, 0.0), std::numbers::pi / 2);
    EXPECT_NEAR(std::norm(a.r), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(a.t), 0.0, 1e-6);
}

TEST(ScatteringExact, UncoupledIsTransparent) {
    const auto a = scattering_exact(build_two_atoms(Topology::Nested, 3, 1, 0.0, 0.0), 1.0);
    EXPECT_NEAR(std::abs(a.t - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(a.r), 0.0, 1e-14);
}

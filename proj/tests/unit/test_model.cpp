// test_model.cpp — layout builders and structural validation
#include <gtest/gtest.h>

#include <algorithm>

#include "giantqed/model.hpp"

using namespace giantqed;

namespace {

std::vector<long> sites(const AtomSpec& a) {
    std::vector<long> s;
    for (const auto& p : a.points) s.push_back(p.site);
    return s;
}

using Sites = std::vector<long>;

}  // namespace

TEST(Builders, SingleAtomPoints) {
    const auto c = build_single_atom(2, 6, 1.0, 0.0);
    ASSERT_EQ(c.atoms.size(), 1u);
    EXPECT_EQ(sites(c.atoms[0]), (Sites{0, 6}));
    EXPECT_DOUBLE_EQ(c.atoms[0].points[1].strength, 1.0);
    EXPECT_EQ(sites(build_single_atom(3, 2, 0.5, 0.0).atoms[0]), (Sites{0, 2, 4}));
}

TEST(Builders, TwoAtomTopologies) {
    auto s = build_two_atoms(Topology::Separate, 8, 8, 1.0, 0.0);
    EXPECT_EQ(sites(s.atoms[0]), (Sites{0, 8}));
    EXPECT_EQ(sites(s.atoms[1]), (Sites{16, 24}));
    auto b = build_two_atoms(Topology::Braided, 16, 8, 1.0, 0.0);
    EXPECT_EQ(sites(b.atoms[0]), (Sites{0, 16}));
    EXPECT_EQ(sites(b.atoms[1]), (Sites{8, 24}));
    auto n = build_two_atoms(Topology::Nested, 8, 8, 1.0, 0.0);
    EXPECT_EQ(sites(n.atoms[0]), (Sites{0, 24}));
    EXPECT_EQ(sites(n.atoms[1]), (Sites{8, 16}));
}

TEST(Builders, BraidedInterleavingProperty) {
    for (long dm = 1; dm <= 6; ++dm)
        for (long dn = dm + 1; dn <= 14; ++dn) {
            const auto c = build_two_atoms(Topology::Braided, dn, dm, 1.0, 0.0);
            const auto a = sites(c.atoms[0]), b = sites(c.atoms[1]);
            EXPECT_TRUE(a[0] < b[0] && b[0] < a[1] && a[1] < b[1]) << dn << "," << dm;
            EXPECT_EQ(a[1] - b[0], dm);
            EXPECT_EQ(a[1] - a[0], dn);
            EXPECT_EQ(b[1] - b[0], dn);
            EXPECT_EQ(classify_pair(c.atoms[0], c.atoms[1]), Topology::Braided);
        }
}

TEST(Builders, ChainOfTwoMatchesPair) {
    for (auto t : {Topology::Separate, Topology::Braided, Topology::Nested})
        for (long dm = 1; dm <= 3; ++dm) {
            const long dn = t == Topology::Braided ? 2 * dm + 1 : dm + 1;
            const auto chain = build_chain(t, 2, dn, dm, 0.7, 0.1);
            const auto pair = build_two_atoms(t, dn, dm, 0.7, 0.1);
            const long shift = pair.min_site() - chain.min_site();
            const auto moved = translated(chain, shift);
            for (std::size_t m = 0; m < 2; ++m) EXPECT_EQ(sites(moved.atoms[m]), sites(pair.atoms[m])) << to_string(t);
        }
}

TEST(Builders, CanonicalOriginAndNoCollisions) {
    for (auto t : {Topology::Separate, Topology::Braided, Topology::Nested})
        for (int n : {2, 3, 5, 10}) {
            const long dn = t == Topology::Braided ? 5 : 2;
            const auto c = build_chain(t, n, dn, 1, 1.0, 0.0);
            EXPECT_EQ(c.min_site(), 0);
            EXPECT_TRUE(validate(c).empty()) << to_string(t) << " " << n;
        }
}

TEST(Builders, NestedChainIsConcentric) {
    const auto c = build_chain(Topology::Nested, 6, 2, 1, 1.0, 0.0);
    for (std::size_t m = 0; m + 1 < c.atoms.size(); ++m)
        EXPECT_EQ(classify_pair(c.atoms[m], c.atoms[m + 1]), Topology::Nested);
}

TEST(Builders, SshStrengths) {
    const auto c = build_ssh_chain(4, 2, 1, 10.0, 0.5, 0.0);
    ASSERT_EQ(c.atoms.size(), 4u);
    EXPECT_DOUBLE_EQ(c.atoms[0].points[0].strength, 10.0);
    EXPECT_DOUBLE_EQ(c.atoms[0].points[1].strength, 5.0);
    EXPECT_DOUBLE_EQ(c.atoms[1].points[0].strength, 5.0);
    EXPECT_DOUBLE_EQ(c.atoms[1].points[1].strength, 10.0);
    EXPECT_THROW(build_ssh_chain(5, 2, 1, 10.0, 0.5, 0.0), ConfigError);
}

TEST(Builders, InvalidArguments) {
    EXPECT_THROW(build_single_atom(0, 1, 1.0, 0.0), ConfigError);
    EXPECT_THROW(build_single_atom(2, 0, 1.0, 0.0), ConfigError);
    EXPECT_THROW(build_two_atoms(Topology::Separate, 0, 1, 1.0, 0.0), ConfigError);
}

TEST(Validate, SharedSiteNamesBothPoints) {
    SystemConfig c;
    c.atoms.push_back({0.0, {{0, 1.0}, {4, 1.0}}});
    c.atoms.push_back({0.0, {{4, 1.0}, {9, 1.0}}});
    const auto v = validate(c);
    ASSERT_EQ(v.size(), 1u);
    ASSERT_EQ(v[0].where.size(), 2u);
    EXPECT_EQ(v[0].where[0].atom, 0u);
    EXPECT_EQ(v[0].where[0].point, 1u);
    EXPECT_EQ(v[0].where[1].atom, 1u);
    EXPECT_EQ(v[0].where[1].point, 0u);
    EXPECT_THROW(require_valid(c), ConfigError);
}

TEST(Validate, BraidedPairIsClean) {
    EXPECT_TRUE(validate(build_two_atoms(Topology::Braided, 3, 1, 1.0, 0.0)).empty());
}

TEST(Validate, ZeroStrengthWarnsOnly) {
    auto c = build_single_atom(2, 3, 1.0, 0.0);
    c.atoms[0].points[1].strength = 0.0;
    EXPECT_TRUE(validate(c).empty());
    EXPECT_FALSE(warnings(c).empty());
}

TEST(Transforms, ReflectionPermutation) {
    const auto n = build_two_atoms(Topology::Nested, 8, 8, 1.0, 0.0);
    const auto p = reflection_permutation(n);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ((*p)[0], 0u);
    EXPECT_EQ((*p)[1], 1u);
    const auto s = build_two_atoms(Topology::Separate, 8, 8, 1.0, 0.0);
    const auto q = reflection_permutation(s);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ((*q)[0], 1u);
    auto lopsided = s;
    lopsided.atoms[0].detuning = 0.3;
    EXPECT_FALSE(reflection_permutation(lopsided).has_value());
}

TEST(Transforms, ReflectedKeepsDistances) {
    const auto c = build_chain(Topology::Braided, 3, 5, 1, 1.0, 0.0);
    const auto r = reflected(c);
    EXPECT_EQ(r.min_site(), c.min_site());
    EXPECT_EQ(r.max_site(), c.max_site());
    EXPECT_TRUE(validate(r).empty());
}

TEST(Topologies, RoundTripNames) {
    for (auto t : {Topology::Separate, Topology::Braided, Topology::Nested, Topology::SmallAtom})
        EXPECT_EQ(topology_from_string(to_string(t)), t);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "nhilb/errors.hpp"
#include "nhilb/lattice.hpp"

using namespace nhilb;

namespace {

const PointSet kS({{0, 0}, {0, 2}, {1, 2}, {2, 1}});
const PointSet kSPrime({{0, 0}, {0, 2}, {1, 1}, {2, 1}});
const PointSet kS1({{0, 0}, {0, 1}, {0, 2}, {1, 0}});
const PointSet kS2({{0, 0}, {0, 1}, {1, 0}, {1, 1}});

bool brute_in_P(const std::vector<int>& a, const std::vector<int>& b, int m, int k) {
    const std::size_t n = a.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (a[j] < 0 || b[j] < 0) return false;
        if (j + 1 < n && a[j] > a[j + 1]) return false;
        if (j + 1 < n && a[j] == a[j + 1] && b[j + 1] < b[j] + m) return false;
        int need = std::max(k - a[j], 0);
        for (std::size_t i = 0; i < j; ++i) need += std::max(m - (a[j] - a[i]), 0);
        if (b[j] < need) return false;
    }
    return true;
}

// Every (a, b) in Z^{2n}_{>=0} with total degree <= D.
void for_each_vector(int n, int D, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> v(2 * n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == 2 * n) {
            fn(v);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            v[i] = x;
            rec(i + 1, left - x);
        }
        v[i] = 0;
    };
    rec(0, D);
}

std::vector<Rational> as_rationals(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(PointSet, ParseAndPrint) {
    const PointSet p = PointSet::parse(" (0,0), ( 1 ,2 ),(3,-1) ");
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(p[1], (Point{1, 2}));
    EXPECT_EQ(p.to_string(), "(0,0),(1,2),(3,-1)");
    EXPECT_EQ(PointSet::parse("").size(), 0u);
    EXPECT_THROW(PointSet::parse("(0,0"), UsageError);
    EXPECT_THROW(PointSet::parse("(0;0)"), UsageError);
    EXPECT_THROW(PointSet::parse("(a,1)"), UsageError);
}

TEST(PointSet, ExponentsAndSums) {
    EXPECT_EQ(kS.exponents(), (std::vector<int>{0, 0, 1, 2, 0, 2, 2, 1}));
    EXPECT_EQ(PointSet::from_exponents(kS.exponents()), kS);
    EXPECT_EQ(kS1 + kS2, kS);
    EXPECT_EQ(kS.bidegree(), (std::pair<int, int>{3, 5}));
    EXPECT_TRUE(kS.is_strict());
    EXPECT_FALSE(PointSet({{1, 0}, {1, 0}}).is_strict());
    EXPECT_TRUE(PointSet({{1, 0}, {1, 0}}).is_lex_sorted());
}

TEST(InP, WorkedExamples) {
    EXPECT_TRUE(in_P(kS, 2, 0));
    EXPECT_FALSE(in_P(kSPrime, 2, 0));
    EXPECT_TRUE(in_P(PointSet({{0, 1}, {0, 3}}), 2, 1));
    EXPECT_FALSE(in_P(PointSet({{0, 1}, {0, 2}}), 2, 1));
    EXPECT_FALSE(in_P(PointSet({{0, 0}, {1, 0}}), 2, 1));
    EXPECT_TRUE(in_P(PointSet(std::vector<Point>{}), 3, 3));
}

TEST(EnumerateP, MatchesBruteForceScan) {
    for (int n = 1; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m)
            for (int k = 0; k <= 2; ++k) {
                const int D = n == 3 ? 7 : 9;
                std::set<std::vector<int>> brute;
                for_each_vector(n, D, [&](const std::vector<int>& v) {
                    const std::vector<int> a(v.begin(), v.begin() + n), b(v.begin() + n, v.end());
                    if (brute_in_P(a, b, m, k)) brute.insert(v);
                });
                std::set<std::vector<int>> listed;
                for (const auto& p : enumerate_P(n, m, k, D)) {
                    EXPECT_TRUE(in_P(p, m, k));
                    listed.insert(p.exponents());
                }
                EXPECT_EQ(listed, brute) << "n=" << n << " m=" << m << " k=" << k;
            }
}

TEST(EnumerateP, OnePointClosedForm) {
    for (int k = 0; k <= 3; ++k) {
        std::vector<PointSet> expected;
        for (int a = 0; a <= 8; ++a)
            for (int b = std::max(k - a, 0); a + b <= 8; ++b) expected.push_back(PointSet({{a, b}}));
        EXPECT_EQ(enumerate_P(1, 2, k, 8), expected);
    }
}

TEST(EnumerateP, ZeroPointsAndOrdering) {
    EXPECT_EQ(enumerate_P(0, 1, 1, 3).size(), 1u);
    const auto pts = enumerate_P(3, 2, 1, 10);
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(), [](const PointSet& l, const PointSet& r) {
        std::vector<int> la, ra;
        for (const auto& p : l) la.push_back(p.a);
        for (const auto& p : r) ra.push_back(p.a);
        return la < ra;
    }));
    EXPECT_THROW(enumerate_P(-1, 1, 1, 3), UsageError);
    EXPECT_THROW(enumerate_P(2, 1, 1, -1), UsageError);
}

TEST(EnumerateP, ParallelMatchesSerial) {
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(enumerate_P(n, 2, 1, 14), enumerate_P_serial(n, 2, 1, 14));
}

TEST(HilbertSeries, NoPointsIsThePlane) {
    const QTSeries h = hilbert_series(0, 1, 1, 2);
    EXPECT_EQ(h.coeffs().size(), 6u);
    for (const auto& [key, c] : h.coeffs()) EXPECT_EQ(c, 1);
    EXPECT_THROW(hilbert_series(2, -2, 1, 3), UsageError);
}

TEST(KLift, BijectsSupportLevels) {
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int k = 1; k <= 3; ++k) {
                for (const auto& p : enumerate_P(n, m, k, 9)) {
                    const PointSet down = k_unlift(p, k);
                    EXPECT_TRUE(in_P(down, m, 0));
                    EXPECT_EQ(k_lift(down, k), p);
                }
                for (const auto& p : enumerate_P(n, m, 0, 6)) EXPECT_TRUE(in_P(k_lift(p, k), m, k));
            }
    EXPECT_EQ(k_lift(PointSet({{0, 0}, {1, 0}, {3, 2}}), 2), PointSet({{0, 2}, {1, 1}, {3, 2}}));
    EXPECT_THROW(k_unlift(PointSet({{0, 0}}), 1), DomainError);
}

TEST(SumDecompose, WorkedExample) {
    const auto parts = sum_decompose(kS, 2);
    ASSERT_TRUE(parts.has_value());
    ASSERT_EQ(parts->size(), 2u);
    EXPECT_TRUE((*parts)[0].is_strict());
    EXPECT_TRUE((*parts)[1].is_strict());
    EXPECT_EQ((*parts)[0] + (*parts)[1], kS);
    // The printed pair is itself a valid decomposition.
    EXPECT_TRUE(kS1.is_strict());
    EXPECT_TRUE(kS2.is_strict());
    EXPECT_EQ(kS1 + kS2, kS);

    EXPECT_FALSE(sum_decompose(kSPrime, 2).has_value());
    EXPECT_THROW(sum_decompose(kS, 0), UsageError);
}

TEST(SumDecompose, ExistsExactlyOnPmZero) {
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            const int D = n == 3 ? 6 : 8;
            for_each_vector(n, D, [&](const std::vector<int>& v) {
                const PointSet s = PointSet::from_exponents(v);
                if (!s.is_lex_sorted()) return;
                const auto parts = sum_decompose(s, m);
                EXPECT_EQ(parts.has_value(), in_P(s, m, 0)) << s.to_string() << " m=" << m;
                if (parts) {
                    PointSet total = parts->front();
                    for (std::size_t i = 1; i < parts->size(); ++i) total = total + (*parts)[i];
                    EXPECT_EQ(total, s);
                }
            });
        }
}

TEST(LiftDecompose, WorkedExample) {
    const std::vector<PointSet> parts = {kS1, kS2};
    EXPECT_EQ(lift_decompose(parts, 1).ks, (std::vector<int>{0, 1}));
    EXPECT_EQ(lift_decompose(parts, 2).ks, (std::vector<int>{1, 1}));
    EXPECT_EQ(k_lift(kS, 1), kS1 + k_lift(kS2, 1));
    EXPECT_EQ(k_lift(kS, 2), k_lift(kS1, 1) + k_lift(kS2, 1));
    const auto d3 = lift_decompose(parts, 3);
    EXPECT_EQ(d3.ks[0] + d3.ks[1], 3);
    EXPECT_GE(d3.ks[0], 1);
    EXPECT_GE(d3.ks[1], 1);
    EXPECT_EQ(d3.history.size(), 4u);
    EXPECT_EQ(d3.history.front(), (std::vector<int>{0, 0}));
}

TEST(LiftDecompose, LiftedSumIdentityOnAllDecompositions) {
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m)
            for (const auto& p : enumerate_P(n, m, 0, n == 3 ? 8 : 10)) {
                const auto parts = sum_decompose(p, m);
                ASSERT_TRUE(parts.has_value());
                for (int k = 0; k <= 4; ++k) {
                    const auto d = lift_decompose(*parts, k);
                    PointSet total = k_lift((*parts)[0], d.ks[0]);
                    for (std::size_t i = 1; i < parts->size(); ++i) total = total + k_lift((*parts)[i], d.ks[i]);
                    EXPECT_EQ(total, k_lift(p, k));
                }
            }
}

TEST(Okounkov, HalfspacesAgreeWithMaxFormula) {
    std::mt19937 rng(5);
    for (int n = 1; n <= 4; ++n)
        for (int M = 0; M <= 3; ++M)
            for (int k = 0; k <= 2; ++k) {
                const auto hs = okounkov_halfspaces(n, M, k);
                std::size_t expected = n;  // a_1 >= 0 and the n-1 chain inequalities
                for (int j = 0; j < n; ++j) expected += std::size_t{2} << j;
                EXPECT_EQ(hs.size(), expected);
                std::uniform_int_distribution<int> num(-2, 14), den(1, 3);
                for (int trial = 0; trial < 300; ++trial) {
                    std::vector<Rational> v(2 * n);
                    for (auto& x : v) {
                        x = Rational(num(rng), den(rng));
                        x.canonicalize();
                    }
                    EXPECT_EQ(in_halfspaces(hs, v), in_delta(v, M, k));
                }
            }
}

TEST(Okounkov, ScaledLatticePointsLieInTheBody) {
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int k = 1; k <= 2; ++k)
                for (int d = 1; d <= 3; ++d)
                    for (const auto& p : enumerate_P(n, d * (m + k), d * k, 4 * d + 6)) {
                        std::vector<Rational> v;
                        for (int e : p.exponents()) v.push_back(Rational(e, d));
                        for (auto& x : v) x.canonicalize();
                        EXPECT_TRUE(in_delta(v, m + k, k));
                    }
}

TEST(Okounkov, BodyMembershipChecksAmbientCoordinates) {
    const std::vector<int> good = {2, 0, 0, 1, 1, 3};  // (x, y) = (2, 0), then P(2,1) for n = 2
    EXPECT_TRUE(nk_body_membership(as_rationals(good), 1, 1));
    const std::vector<int> neg = {-1, 0, 0, 1, 1, 3};
    EXPECT_FALSE(nk_body_membership(as_rationals(neg), 1, 1));
    const std::vector<int> outside = {0, 0, 0, 0, 0, 0};
    EXPECT_FALSE(nk_body_membership(as_rationals(outside), 1, 1));
    EXPECT_THROW(nk_body_membership(as_rationals({1}), 1, 1), UsageError);
}

TEST(Cones, SixConesMatchPrintedFormsAndPartition) {
    const int D = 10;
    const auto cones = printed_cones_n2();
    ASSERT_EQ(cones.size(), 6u);
    std::vector<PointSet> pts;
    QTSeries total(D);
    for (const auto& c : cones) {
        EXPECT_FALSE(cone_series(c, D).first_mismatch(cone_printed_series(c, D)).has_value()) << c.label;
        const auto cp = cone_points(c, D);
        QTSeries counted(D);
        for (const auto& p : cp) {
            EXPECT_TRUE(in_P(p, 2, 1)) << c.label << " " << p.to_string();
            const auto [a, b] = p.bidegree();
            counted.add(a, b, 1);
        }
        EXPECT_EQ(counted, cone_series(c, D)) << c.label;
        pts.insert(pts.end(), cp.begin(), cp.end());
        total += cone_series(c, D);
    }
    std::sort(pts.begin(), pts.end());
    EXPECT_EQ(std::adjacent_find(pts.begin(), pts.end()), pts.end());
    auto lattice = enumerate_P(2, 2, 1, D);
    std::sort(lattice.begin(), lattice.end());
    EXPECT_EQ(pts, lattice);
    EXPECT_EQ(total, lattice_sum(2, 2, 1, D));
}

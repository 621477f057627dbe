#include <gtest/gtest.h>

#include <random>
#include <set>

#include "nhilb/errors.hpp"
#include "nhilb/lattice.hpp"
#include "nhilb/sections.hpp"

using namespace nhilb;

namespace {

MvPoly var(const VarSpace& s, int v) { return MvPoly::variable(s, v); }

std::vector<int> transposition(int n, int i, int j) {
    std::vector<int> p(n);
    for (int l = 0; l < n; ++l) p[l] = l;
    std::swap(p[i], p[j]);
    return p;
}

MvPoly random_combination(std::mt19937& rng, const std::vector<GeneratorRecord>& gens, int count) {
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    MvPoly f(gens.front().poly.space());
    for (int i = 0; i < count; ++i) f += gens[pick(rng)].poly.scaled(coef(rng));
    return f;
}

std::set<std::vector<int>> lattice_exponents(int n, int m, int k, int D) {
    std::set<std::vector<int>> out;
    for (const auto& p : enumerate_P(n, m, k, D)) out.insert(p.exponents());
    return out;
}

}  // namespace

TEST(DeltaPoly, SmallDeterminants) {
    const VarSpace b2 = VarSpace::blowup(2);
    EXPECT_EQ(delta_poly(PointSet({{0, 0}, {1, 0}})), var(b2, b2.x_index(2)) - var(b2, b2.x_index(1)));
    EXPECT_EQ(delta_poly(PointSet({{0, 0}, {0, 1}})), var(b2, b2.y_index(2)) - var(b2, b2.y_index(1)));

    const MvPoly d3 = delta_poly(PointSet({{0, 0}, {0, 1}, {1, 0}}));
    EXPECT_EQ(d3.num_terms(), 6u);
    const auto [mono, c] = d3.trailing_term();
    EXPECT_EQ(mono, Monomial({0, 0, 1, 0, 1, 0}));  // y_2 x_3
    EXPECT_EQ(c, 1);
    EXPECT_THROW(delta_poly(PointSet({{1, 1}, {1, 1}})), DomainError);
}

TEST(DeltaPoly, AntisymmetricBihomogeneousWithLexTrailingTerm) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coord(0, 3);
    for (int n = 2; n <= 4; ++n)
        for (int trial = 0; trial < 15; ++trial) {
            std::set<Point> pts;
            while (static_cast<int>(pts.size()) < n) pts.insert({coord(rng), coord(rng)});
            const PointSet s(std::vector<Point>(pts.begin(), pts.end()));
            const MvPoly d = delta_poly(s);
            EXPECT_TRUE(d.is_bihomogeneous());
            EXPECT_EQ(d.bidegree(), s.bidegree());
            EXPECT_EQ(d.trailing_term().first, Monomial(s.exponents()));
            EXPECT_EQ(d.trailing_term().second, 1);
            for (int i = 0; i + 1 < n; ++i) EXPECT_EQ(d.permute_points(transposition(n, i, i + 1)), -d);
        }
}

TEST(SymMonomial, OrbitSums) {
    const VarSpace b2 = VarSpace::blowup(2);
    const MvPoly x1 = var(b2, b2.x_index(1)), x2 = var(b2, b2.x_index(2));
    const MvPoly y1 = var(b2, b2.y_index(1)), y2 = var(b2, b2.y_index(2));
    EXPECT_EQ(sym_monomial(PointSet({{1, 0}, {1, 0}})), x1 * x2);
    EXPECT_EQ(sym_monomial(PointSet({{1, 0}, {0, 1}})), x1 * y2 + x2 * y1);
    const MvPoly f = sym_monomial(PointSet({{1, 0}, {2, 0}}));
    EXPECT_EQ(f, x1 * x2.pow(2) + x1.pow(2) * x2);
    EXPECT_EQ(f.trailing_term().first, Monomial({1, 2, 0, 0}));
    const MvPoly g = sym_monomial(PointSet({{0, 1}, {1, 0}, {1, 0}}));
    EXPECT_EQ(g.num_terms(), 3u);
    EXPECT_EQ(g.permute_points(transposition(3, 0, 2)), g);
}

TEST(Support, Checks) {
    const VarSpace b2 = VarSpace::blowup(2);
    const MvPoly f = var(b2, b2.x_index(1)) * var(b2, b2.y_index(2)) + var(b2, b2.x_index(2)) * var(b2, b2.y_index(1));
    EXPECT_TRUE(support_ok(f, 1));
    EXPECT_FALSE(support_ok(f, 2));
    const std::vector<HalfPlane> quadrant = {{1, 0, 0}, {0, 1, 0}};
    EXPECT_TRUE(polygon_support_ok(MvPoly::constant(b2, 1), quadrant));
    const std::vector<HalfPlane> blowup = {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}};
    EXPECT_EQ(polygon_support_ok(f, blowup), support_ok(f, 1));
    const std::vector<HalfPlane> three = {{1, 1, 3}};
    for (const auto& s : {PointSet({{0, 0}, {1, 0}, {0, 1}}), PointSet({{0, 0}, {2, 5}, {4, 0}})}) {
        EXPECT_TRUE(support_ok(delta_poly(k_lift(s, 2)), 2));
        EXPECT_TRUE(polygon_support_ok(delta_poly(k_lift(s, 3)), three));
    }
    EXPECT_THROW(support_ok(embed_nested(f), 1), UsageError);
}

TEST(Phi, SubstitutionAndInverse) {
    const VarSpace n2 = VarSpace::nested(2);
    const MvPoly x = var(n2, n2.ambient_x()), x1 = var(n2, n2.x_index(1));
    EXPECT_EQ(apply_phi(x1), x1 - x);
    EXPECT_EQ(apply_phi_inv(x1), x1 + x);
    EXPECT_THROW(apply_phi(delta_poly(PointSet({{0, 0}, {1, 0}}))), UsageError);

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> e(0, 2), c(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        MvPoly f(n2);
        for (int t = 0; t < 5; ++t) {
            std::vector<int> exps(n2.size());
            for (auto& v : exps) v = e(rng);
            f.add_term(Monomial(exps), c(rng));
        }
        EXPECT_EQ(apply_phi(apply_phi_inv(f)), f);
        EXPECT_EQ(apply_phi_inv(apply_phi(f)), f);
    }
}

TEST(Phi, UnitriangularOnGenerators) {
    for (const auto& g : generators({2, 2, 1, 6, Ambient::blowup})) {
        const MvPoly f = embed_nested(g.poly);
        const MvPoly diff = apply_phi(f) - f;
        const auto [d1, d2] = g.poly.bidegree();
        for (const auto& [mono, c] : diff.terms()) {
            EXPECT_TRUE(mono[0] > 0 || mono[1] > 0);
            EXPECT_LE(mono[0], d1);
            EXPECT_LE(mono[1], d2);
        }
        std::vector<int> expected = {0, 0};
        expected.insert(expected.end(), g.trailing.exps().begin(), g.trailing.exps().end());
        EXPECT_EQ(apply_phi(f).trailing_term().first, Monomial(expected));
    }
}

TEST(InIPower, Examples) {
    const VarSpace n2 = VarSpace::nested(2);
    const MvPoly u = var(n2, n2.x_index(1)) - var(n2, n2.ambient_x());
    EXPECT_FALSE(in_I_power(u.pow(2), 2));  // vanishes only along the first diagonal
    const MvPoly both = u.pow(2) * (var(n2, n2.y_index(2)) - var(n2, n2.ambient_y())).pow(2);
    EXPECT_TRUE(in_I_power(both, 2));
    EXPECT_FALSE(in_I_power(both, 3));
    EXPECT_FALSE(in_I_power(MvPoly::constant(n2, 1), 1));
    EXPECT_TRUE(in_I_power(MvPoly::constant(n2, 1), 0));

    const VarSpace n1 = VarSpace::nested(1);
    const MvPoly v = var(n1, n1.x_index(1)) - var(n1, n1.ambient_x());
    EXPECT_TRUE(in_I_power(v.pow(2), 2));
    EXPECT_FALSE(in_I_power(v.pow(2), 3));
}

TEST(InIPower, MatchesSupportThroughPhi) {
    std::mt19937 rng(41);
    for (int n = 2; n <= 3; ++n)
        for (int k = 0; k <= 2; ++k) {
            const auto gens = generators({n, 2, k, n == 2 ? 6 : 8, Ambient::blowup});
            ASSERT_FALSE(gens.empty());
            for (const auto& g : gens) EXPECT_TRUE(in_I_power(apply_phi(embed_nested(g.poly)), k));
            for (int trial = 0; trial < 20; ++trial) {
                const MvPoly f = random_combination(rng, gens, 3);
                for (int kk = 0; kk <= k + 1; ++kk)
                    EXPECT_EQ(support_ok(f, kk), in_I_power(apply_phi(embed_nested(f)), kk));
            }
        }
}

TEST(Generators, OnePointSingletons) {
    const auto gens = generators({1, 1, 0, 4, Ambient::blowup});
    EXPECT_EQ(gens.size(), 15u);
    for (const auto& g : gens) EXPECT_EQ(g.poly.num_terms(), 1u);
}

TEST(Generators, OneLiftAvoidsOrigin) {
    const int D = 5;
    std::set<MvPoly::TermMap> from_generators, direct;
    for (const auto& g : generators({2, 1, 1, D, Ambient::blowup})) from_generators.insert(g.poly.terms());
    for (int a1 = 0; a1 <= D; ++a1)
        for (int b1 = 0; a1 + b1 <= D; ++b1)
            for (int a2 = 0; a1 + b1 + a2 <= D; ++a2)
                for (int b2 = 0; a1 + b1 + a2 + b2 <= D; ++b2) {
                    const Point p{a1, b1}, q{a2, b2};
                    if (!(p < q) || p == Point{0, 0}) continue;
                    direct.insert(delta_poly(PointSet({p, q})).terms());
                }
    EXPECT_EQ(from_generators, direct);
    EXPECT_EQ(generators({2, 1, 1, 2, Ambient::blowup}).size(), 1u);
}

TEST(Generators, RecordInvariants) {
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= 2; ++k)
            for (const auto& g : generators({2, m, k, 7, Ambient::blowup})) {
                ASSERT_EQ(static_cast<int>(g.factors.size()), m);
                MvPoly prod = MvPoly::constant(VarSpace::blowup(2), 1);
                PointSet sum({{0, 0}, {0, 0}});
                int lifts = 0;
                for (const auto& f : g.factors) {
                    prod = prod * delta_poly(f.lifted());
                    sum = sum + f.lifted();
                    lifts += f.lift;
                }
                EXPECT_EQ(lifts, k);
                EXPECT_EQ(prod, g.poly);
                EXPECT_EQ(g.trailing, Monomial(sum.exponents()));
                EXPECT_TRUE(support_ok(g.poly, k));
                EXPECT_TRUE(g.poly.is_bihomogeneous());
                const MvPoly swapped = g.poly.permute_points(transposition(2, 0, 1));
                EXPECT_EQ(swapped, m % 2 ? -g.poly : g.poly);
            }
}

TEST(Generators, NestedRecordsCarryAmbientPowers) {
    const auto gens = generators({2, 1, 1, 5, Ambient::nested});
    ASSERT_FALSE(gens.empty());
    for (const auto& g : gens) {
        EXPECT_TRUE(in_I_power(g.poly, 1));
        EXPECT_EQ(g.poly.trailing_term().first, g.trailing);
        EXPECT_EQ(g.trailing[0], g.xy_power.first);
        EXPECT_EQ(g.trailing[1], g.xy_power.second);
    }
}

TEST(NestedGenerators, LowTwistExamples) {
    // m = 0, k = 1: phi(Delta_S) with the origin excluded from S.
    for (const auto& f : nested_generators(2, 0, 1, 5)) EXPECT_TRUE(in_I_power(f, 1));
    // m = -1, k = 1: phi(m_S) with the origin excluded from S.
    const auto sym = nested_generators(2, -1, 1, 4);
    ASSERT_FALSE(sym.empty());
    for (const auto& f : sym) EXPECT_TRUE(in_I_power(f, 1));
    const auto gens = generators({2, -1, 1, 4, Ambient::nested});
    for (const auto& g : gens) {
        EXPECT_TRUE(g.factors.empty());
        const PointSet s = PointSet::from_exponents(
            std::vector<int>(g.trailing.exps().begin() + 2, g.trailing.exps().end()));
        for (const auto& p : s) EXPECT_NE(p, (Point{0, 0}));
    }
    EXPECT_THROW(nested_generators(2, -2, 1, 4), UsageError);
}

TEST(GradedSections, BlowupTrailingSetsAreLatticePoints) {
    for (int n = 1; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m)
            for (int k = 0; k <= 2; ++k) {
                const auto ts = trailing_set({n, m, k, 8, Ambient::blowup});
                EXPECT_EQ(ts, lattice_exponents(n, m, k, 8)) << "n=" << n << " m=" << m << " k=" << k;
            }
}

TEST(GradedSections, NestedTrailingSetsArePlaneTimesLattice) {
    for (auto [m, k] : {std::pair{1, 1}, {0, 1}, {2, 1}, {-1, 1}}) {
        const int D = 7;
        std::set<std::vector<int>> expected;
        for (const auto& p : enumerate_P(2, m + k, k, D))
            for (int a = 0; a + p.degree() <= D; ++a)
                for (int b = 0; a + b + p.degree() <= D; ++b) {
                    std::vector<int> e = {a, b};
                    for (int v : p.exponents()) e.push_back(v);
                    expected.insert(e);
                }
        EXPECT_EQ(trailing_set({2, m, k, D, Ambient::nested}), expected) << "m=" << m << " k=" << k;
    }
}

TEST(GradedSections, DimensionAtBidegreeTwoTwo) {
    int lattice = 0;
    for (const auto& p : enumerate_P(2, 2, 1, 4))
        if (p.bidegree() == std::pair<int, int>{2, 2}) ++lattice;
    EXPECT_GT(lattice, 0);
    EXPECT_EQ(graded_dim({2, 2, 1, 4, Ambient::blowup}, 2, 2), lattice);
}

TEST(GradedSections, FourPointExample) {
    const GradedSections gs = graded_sections({4, 2, 0, 8, Ambient::blowup});
    const auto& tr = gs.piece(3, 5).echelon.trailing;
    const std::set<Monomial> pivots(tr.begin(), tr.end());
    EXPECT_TRUE(pivots.count(Monomial(PointSet({{0, 0}, {0, 2}, {1, 2}, {2, 1}}).exponents())));
    EXPECT_FALSE(pivots.count(Monomial(PointSet({{0, 0}, {0, 2}, {1, 1}, {2, 1}}).exponents())));
}

TEST(GradedSections, BlowupDimsMatchSupportSubspace) {
    for (auto [m, k] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        const GradedSections gs = graded_sections({2, m, k, 6, Ambient::blowup});
        for (const auto& p : gs.pieces)
            EXPECT_EQ(p.dim(), support_subspace_dim(2, m, k, p.dq, p.dt)) << p.dq << "," << p.dt;
    }
}

TEST(GradedSections, SeriesAndSerialReference) {
    for (auto ambient : {Ambient::blowup, Ambient::nested}) {
        const SectionSpaceSpec spec{3, 1, 1, 7, ambient};
        const GradedSections a = graded_sections(spec), b = graded_sections_serial(spec);
        EXPECT_EQ(a.series(), b.series());
        EXPECT_EQ(a.trailing_set(), b.trailing_set());
    }
    const SectionSpaceSpec nested{2, 1, 2, 8, Ambient::nested};
    EXPECT_EQ(graded_sections(nested).series(), hilbert_series(2, 1, 2, 8));
}

TEST(GradedSections, JsonShape) {
    const auto j = graded_sections({1, 1, 0, 2, Ambient::blowup}).to_json();
    EXPECT_EQ(j["ambient"], "blowup");
    ASSERT_EQ(j["pieces"].size(), 6u);
    EXPECT_EQ(j["pieces"][0]["bidegree"], nlohmann::json::parse("[0,0]"));
    EXPECT_EQ(j["pieces"][0]["dim"], 1);
}

TEST(Caps, EnforcedAndConfigurable) {
    EXPECT_THROW(graded_sections({5, 1, 0, 2, Ambient::blowup}), UsageError);
    EXPECT_THROW(graded_sections({2, 1, 1, 9, Ambient::nested}), UsageError);
    EXPECT_THROW(graded_sections({2, 3, 2, 4, Ambient::nested}), UsageError);
    EXPECT_THROW(graded_sections({0, 1, 0, 2, Ambient::blowup}), UsageError);
    EXPECT_THROW(graded_sections({2, -1, 0, 2, Ambient::blowup}), UsageError);
    SectionCaps wide;
    wide.max_D = 10;
    EXPECT_NO_THROW(graded_sections({2, 1, 1, 10, Ambient::nested}, wide));
}

TEST(Surjectivity, ProductsOfDegreeOnePiecesSpan) {
    for (auto [m, k] : {std::pair{2, 1}, {1, 2}}) {
        const auto r = check_surjectivity(2, m, k, 6);
        EXPECT_TRUE(r.ok()) << r.to_json().dump();
        EXPECT_EQ(r.entries.size(), 28u);
    }
    EXPECT_TRUE(check_surjectivity(1, 3, 2, 6).ok());
    EXPECT_THROW(check_surjectivity(2, 0, 1, 4), UsageError);
}

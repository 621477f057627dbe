#include "nhilb/sections.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "nhilb/errors.hpp"
#include "nhilb/parallel.hpp"

namespace nhilb {

void SectionSpaceSpec::validate(const SectionCaps& caps) const {
    if (n < 1) throw UsageError("sections: n must be >= 1");
    if (D < 0) throw UsageError("sections: D must be >= 0");
    if (k < 0) throw UsageError("sections: k must be >= 0");
    if (a_exponent() < 0) throw UsageError(ambient == Ambient::nested ? "sections: need m + k >= 0" : "sections: need m >= 0");
    if (n > caps.max_n) throw UsageError("sections: n exceeds cap " + std::to_string(caps.max_n));
    if (a_exponent() > caps.max_mk) throw UsageError("sections: m + k exceeds cap " + std::to_string(caps.max_mk));
    if (D > caps.max_D) throw UsageError("sections: D exceeds cap " + std::to_string(caps.max_D));
}

// ---------------------------------------------------------------------------
// Building blocks

MvPoly delta_poly(const PointSet& s) {
    std::vector<Point> pts = s.points();
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw DomainError("delta_poly: repeated point, determinant is degenerate");

    const int n = static_cast<int>(pts.size());
    const VarSpace space = VarSpace::blowup(n);
    MvPoly out(space);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        Monomial mono = Monomial::one(space);
        for (int i = 0; i < n; ++i) {
            mono[space.x_index(i + 1)] = pts[perm[i]].a;
            mono[space.y_index(i + 1)] = pts[perm[i]].b;
        }
        out.add_term(mono, inversions % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

MvPoly sym_monomial(const PointSet& s) {
    std::vector<Point> pts = s.points();
    std::sort(pts.begin(), pts.end());
    const int n = static_cast<int>(pts.size());
    const VarSpace space = VarSpace::blowup(n);
    MvPoly out(space);
    do {
        Monomial mono = Monomial::one(space);
        for (int i = 0; i < n; ++i) {
            mono[space.x_index(i + 1)] = pts[i].a;
            mono[space.y_index(i + 1)] = pts[i].b;
        }
        out.add_term(mono, 1);
    } while (std::next_permutation(pts.begin(), pts.end()));
    return out;
}

namespace {

std::vector<Point> plane_points(int budget) {
    std::vector<Point> out;
    for (int a = 0; a <= budget; ++a)
        for (int b = 0; a + b <= budget; ++b) out.push_back({a, b});
    return out;
}

// n-element point sets of total degree <= budget; strict = distinct points.
std::vector<PointSet> point_sets(int n, int budget, bool strict) {
    const std::vector<Point> pts = plane_points(budget);
    std::vector<PointSet> out;
    std::vector<Point> chosen;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int used) {
        if (static_cast<int>(chosen.size()) == n) {
            out.emplace_back(chosen);
            return;
        }
        for (std::size_t i = start; i < pts.size(); ++i) {
            const int d = pts[i].a + pts[i].b;
            if (used + d > budget) continue;
            chosen.push_back(pts[i]);
            rec(strict ? i + 1 : i, used + d);
            chosen.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

bool point_ok(int a, int b, int k) { return a + b >= k; }

struct Factor {
    PointSet set;
    int lift = 0;
    int degree = 0;
    MvPoly poly;
};

// Lifted determinants Delta_{l_j(S)} for j = 0..k with degree <= budget,
// sorted by degree so that tuple enumeration can stop early.
std::vector<Factor> lifted_factors(int n, int k, int budget) {
    std::vector<Factor> out;
    for (int lift = 0; lift <= k; ++lift)
        for (auto& s : point_sets(n, budget, true)) {
            const int d = k_lift(s, lift).degree();
            if (d <= budget) out.push_back({std::move(s), lift, d, {}});
        }
    std::stable_sort(out.begin(), out.end(), [](const Factor& l, const Factor& r) { return l.degree < r.degree; });
    parallel_for(out.size(), [&](std::size_t i) { out[i].poly = delta_poly(k_lift(out[i].set, out[i].lift)); });
    return out;
}

// Nondecreasing index tuples of length m with lift sum k and degree sum <= D.
std::vector<std::vector<std::size_t>> factor_tuples(const std::vector<Factor>& fs, int m, int k, int D) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t start, int deg_left, int lift_left) {
        const int slots = m - static_cast<int>(idx.size());
        if (slots == 0) {
            if (lift_left == 0) out.push_back(idx);
            return;
        }
        for (std::size_t i = start; i < fs.size(); ++i) {
            if (fs[i].degree * slots > deg_left) break;
            if (fs[i].lift > lift_left) continue;
            idx.push_back(i);
            rec(i, deg_left - fs[i].degree, lift_left - fs[i].lift);
            idx.pop_back();
        }
    };
    rec(0, D, k);
    return out;
}

std::vector<GeneratorRecord> blowup_generators(int n, int m, int k, int D) {
    const VarSpace space = VarSpace::blowup(n);
    std::vector<GeneratorRecord> out;
    if (m == 0) {
        for (const auto& s : point_sets(n, D, false)) {
            if (!std::all_of(s.begin(), s.end(), [&](const Point& p) { return point_ok(p.a, p.b, k); })) continue;
            MvPoly poly = sym_monomial(s);
            Monomial tr = poly.trailing_term().first;
            out.push_back({{}, {0, 0}, std::move(poly), std::move(tr)});
        }
        return out;
    }

    const std::vector<Factor> fs = lifted_factors(n, k, D);
    const auto tuples = factor_tuples(fs, m, k, D);
    out.resize(tuples.size());
    parallel_for(tuples.size(), [&](std::size_t t) {
        GeneratorRecord& rec = out[t];
        MvPoly poly = MvPoly::constant(space, 1);
        PointSet trailing_sum{std::vector<Point>(n)};
        for (std::size_t i : tuples[t]) {
            rec.factors.push_back({fs[i].set, fs[i].lift});
            poly = poly * fs[i].poly;
            trailing_sum = trailing_sum + k_lift(fs[i].set, fs[i].lift);
        }
        rec.trailing = Monomial(trailing_sum.exponents());
        if (poly.trailing_term().first != rec.trailing)
            throw InternalError("generator trailing term differs from the pointwise sum of its lifted sets");
        rec.poly = std::move(poly);
    });
    return out;
}

MvPoly xy_monomial(const VarSpace& space, int a, int b) {
    Monomial mono = Monomial::one(space);
    mono[space.ambient_x()] = a;
    mono[space.ambient_y()] = b;
    return MvPoly::monomial(space, std::move(mono));
}

// Substitutes point variable v -> v + sign * u.
MvPoly shift_variable(const MvPoly& f, int v, int u, int sign) {
    MvPoly out(f.space(), f.is_laurent());
    for (const auto& [mono, c] : f.terms()) {
        const int e = mono[v];
        Integer binom = 1;
        for (int j = 0; j <= e; ++j) {
            Monomial m2 = mono;
            m2[v] = e - j;
            m2[u] += j;
            Rational coef = c * Rational(binom);
            if (sign < 0 && j % 2) coef = -coef;
            out.add_term(m2, coef);
            binom = binom * (e - j) / (j + 1);
        }
    }
    return out;
}

MvPoly shift_all_points(const MvPoly& f, int sign) {
    const VarSpace& sp = f.space();
    if (!sp.includes_xy) throw UsageError("phi: polynomial must live in the nested ring (x, y present)");
    MvPoly cur = f;
    for (int i = 1; i <= sp.n; ++i) {
        cur = shift_variable(cur, sp.x_index(i), sp.ambient_x(), sign);
        cur = shift_variable(cur, sp.y_index(i), sp.ambient_y(), sign);
    }
    return cur;
}

std::vector<std::pair<int, int>> bidegrees_upto(int D) {
    std::vector<std::pair<int, int>> out;
    for (int d = 0; d <= D; ++d)
        for (int dq = 0; dq <= d; ++dq) out.push_back({dq, d - dq});
    return out;
}

// Drops duplicate polynomials (up to scaling) before elimination.
std::vector<MvPoly> dedupe(std::vector<MvPoly> polys) {
    std::set<MvPoly::TermMap> seen;
    std::vector<MvPoly> out;
    for (auto& p : polys) {
        if (p.is_zero()) continue;
        MvPoly normal = p.scaled(1 / p.trailing_term().second);
        if (seen.insert(normal.terms()).second) out.push_back(std::move(p));
    }
    return out;
}

using Loop = std::function<void(std::size_t, const std::function<void(std::size_t)>&)>;

const Loop kParallel = [](std::size_t count, const std::function<void(std::size_t)>& body) { parallel_for(count, body); };
const Loop kSerial = [](std::size_t count, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < count; ++i) body(i);
};

GradedSections blowup_sections(const SectionSpaceSpec& spec, const Loop& loop) {
    const auto gens = blowup_generators(spec.n, spec.m, spec.k, spec.D);
    const auto degs = bidegrees_upto(spec.D);
    std::map<std::pair<int, int>, std::size_t> slot;
    for (std::size_t i = 0; i < degs.size(); ++i) slot[degs[i]] = i;

    std::vector<std::vector<MvPoly>> groups(degs.size());
    for (const auto& g : gens) groups[slot.at(g.poly.bidegree())].push_back(g.poly);

    GradedSections out{spec, std::vector<GradedPiece>(degs.size())};
    loop(degs.size(), [&](std::size_t i) {
        const auto polys = dedupe(std::move(groups[i]));
        out.pieces[i] = {degs[i].first, degs[i].second, row_reduce_lex(polys)};
    });
    return out;
}

GradedSections nested_sections(const SectionSpaceSpec& spec, const Loop& loop) {
    SectionSpaceSpec inner{spec.n, spec.a_exponent(), spec.k, spec.D, Ambient::blowup};
    const GradedSections blow = blowup_sections(inner, loop);
    const VarSpace space = spec.space();

    std::vector<std::vector<MvPoly>> shifted(blow.pieces.size());
    loop(blow.pieces.size(), [&](std::size_t i) {
        for (const auto& g : blow.pieces[i].echelon.basis) shifted[i].push_back(apply_phi(embed_nested(g)));
    });

    const auto degs = bidegrees_upto(spec.D);
    GradedSections out{spec, std::vector<GradedPiece>(degs.size())};
    loop(degs.size(), [&](std::size_t i) {
        const auto [d1, d2] = degs[i];
        std::vector<MvPoly> rows;
        for (std::size_t j = 0; j < blow.pieces.size(); ++j) {
            const auto& bp = blow.pieces[j];
            if (bp.dq > d1 || bp.dt > d2) continue;
            const MvPoly shift = xy_monomial(space, d1 - bp.dq, d2 - bp.dt);
            for (const auto& g : shifted[j]) rows.push_back(shift * g);
        }
        out.pieces[i] = {d1, d2, row_reduce_lex(rows)};
    });
    return out;
}

}  // namespace

std::vector<GeneratorRecord> generators(const SectionSpaceSpec& spec, const SectionCaps& caps) {
    spec.validate(caps);
    auto blow = blowup_generators(spec.n, spec.a_exponent(), spec.k, spec.D);
    if (spec.ambient == Ambient::blowup) return blow;

    const VarSpace space = spec.space();
    std::vector<GeneratorRecord> out;
    for (const auto& g : blow) {
        const MvPoly base = apply_phi(embed_nested(g.poly));
        const auto [e1, e2] = g.poly.bidegree();
        for (int a = 0; e1 + e2 + a <= spec.D; ++a)
            for (int b = 0; e1 + e2 + a + b <= spec.D; ++b) {
                std::vector<int> exps = {a, b};
                exps.insert(exps.end(), g.trailing.exps().begin(), g.trailing.exps().end());
                out.push_back({g.factors, {a, b}, xy_monomial(space, a, b) * base, Monomial(std::move(exps))});
            }
    }
    return out;
}

std::vector<MvPoly> nested_generators(int n, int m, int k, int D, const SectionCaps& caps) {
    std::vector<MvPoly> out;
    for (auto& g : generators({n, m, k, D, Ambient::nested}, caps)) out.push_back(std::move(g.poly));
    return out;
}

bool support_ok(const MvPoly& f, int k) {
    const HalfPlane h{1, 1, k};
    return polygon_support_ok(f, std::span<const HalfPlane>(&h, 1));
}

bool polygon_support_ok(const MvPoly& f, std::span<const HalfPlane> halfplanes) {
    const VarSpace& sp = f.space();
    if (sp.includes_xy) throw UsageError("support check expects a polynomial in the blowup ring");
    for (const auto& [mono, c] : f.terms())
        for (int i = 1; i <= sp.n; ++i) {
            const int a = mono[sp.x_index(i)], b = mono[sp.y_index(i)];
            for (const auto& h : halfplanes)
                if (h.alpha * a + h.beta * b < h.c) return false;
        }
    return true;
}

MvPoly embed_nested(const MvPoly& f) {
    const VarSpace& sp = f.space();
    if (sp.includes_xy) return f;
    const VarSpace target = VarSpace::nested(sp.n);
    MvPoly out(target, f.is_laurent());
    for (const auto& [mono, c] : f.terms()) {
        std::vector<int> exps = {0, 0};
        exps.insert(exps.end(), mono.exps().begin(), mono.exps().end());
        out.add_term(Monomial(std::move(exps)), c);
    }
    return out;
}

MvPoly apply_phi(const MvPoly& f) { return shift_all_points(f, -1); }
MvPoly apply_phi_inv(const MvPoly& f) { return shift_all_points(f, +1); }

bool in_I_power(const MvPoly& f, int k) {
    const VarSpace& sp = f.space();
    if (!sp.includes_xy) throw UsageError("in_I_power expects a polynomial in the nested ring");
    if (k <= 0) return true;
    for (int i = 1; i <= sp.n; ++i) {
        const int xi = sp.x_index(i), yi = sp.y_index(i);
        const MvPoly g = shift_variable(shift_variable(f, xi, sp.ambient_x(), +1), yi, sp.ambient_y(), +1);
        for (const auto& [mono, c] : g.terms())
            if (mono[xi] + mono[yi] < k) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Graded pieces

const GradedPiece& GradedSections::piece(int dq, int dt) const {
    for (const auto& p : pieces)
        if (p.dq == dq && p.dt == dt) return p;
    throw UsageError("no graded piece at bidegree (" + std::to_string(dq) + "," + std::to_string(dt) + ")");
}

QTSeries GradedSections::series() const {
    QTSeries out(spec.D);
    for (const auto& p : pieces) out.add(p.dq, p.dt, p.dim());
    return out;
}

std::set<std::vector<int>> GradedSections::trailing_set() const {
    std::set<std::vector<int>> out;
    for (const auto& p : pieces)
        for (const auto& t : p.echelon.trailing) out.insert(t.exps());
    return out;
}

nlohmann::json GradedSections::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pieces) {
        nlohmann::json tr = nlohmann::json::array();
        for (const auto& t : p.echelon.trailing) tr.push_back(t.exps());
        arr.push_back({{"bidegree", {p.dq, p.dt}}, {"dim", p.dim()}, {"trailing", tr}});
    }
    return {{"n", spec.n},
            {"m", spec.m},
            {"k", spec.k},
            {"D", spec.D},
            {"ambient", spec.ambient == Ambient::nested ? "nested" : "blowup"},
            {"pieces", arr}};
}

GradedSections graded_sections(const SectionSpaceSpec& spec, const SectionCaps& caps) {
    spec.validate(caps);
    return spec.ambient == Ambient::nested ? nested_sections(spec, kParallel) : blowup_sections(spec, kParallel);
}

GradedSections graded_sections_serial(const SectionSpaceSpec& spec, const SectionCaps& caps) {
    spec.validate(caps);
    return spec.ambient == Ambient::nested ? nested_sections(spec, kSerial) : blowup_sections(spec, kSerial);
}

std::set<std::vector<int>> trailing_set(const SectionSpaceSpec& spec, const SectionCaps& caps) {
    return graded_sections(spec, caps).trailing_set();
}

int graded_dim(const SectionSpaceSpec& spec, int dq, int dt, const SectionCaps& caps) {
    if (dq < 0 || dt < 0 || dq + dt > spec.D) throw UsageError("graded_dim: bidegree outside the truncation");
    SectionSpaceSpec narrowed = spec;
    narrowed.D = dq + dt;
    return graded_sections(narrowed, caps).piece(dq, dt).dim();
}

// ---------------------------------------------------------------------------
// Surjectivity

bool SurjectivityReport::ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const SurjectivityEntry& e) { return e.product_rank == e.full_dim; });
}

nlohmann::json SurjectivityReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries)
        arr.push_back({{"bidegree", {e.dq, e.dt}}, {"product_rank", e.product_rank}, {"full_dim", e.full_dim}});
    return {{"ok", ok()}, {"entries", arr}};
}

int support_subspace_dim(int n, int m, int k, int dq, int dt) {
    if (n < 1 || m < 1 || dq < 0 || dt < 0) throw UsageError("support_subspace_dim: need n, m >= 1 and dq, dt >= 0");
    std::vector<PointSet> sets;
    for (auto& s : point_sets(n, dq + dt, true)) {
        const auto [a, b] = s.bidegree();
        if (a <= dq && b <= dt) sets.push_back(std::move(s));
    }
    std::vector<MvPoly> deltas(sets.size());
    parallel_for(sets.size(), [&](std::size_t i) { deltas[i] = delta_poly(sets[i]); });

    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> idx;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t start, int qa, int tb) {
        if (static_cast<int>(idx.size()) == m) {
            if (qa == 0 && tb == 0) tuples.push_back(idx);
            return;
        }
        for (std::size_t i = start; i < sets.size(); ++i) {
            const auto [a, b] = sets[i].bidegree();
            if (a > qa || b > tb) continue;
            idx.push_back(i);
            rec(i, qa - a, tb - b);
            idx.pop_back();
        }
    };
    rec(0, dq, dt);

    const VarSpace space = VarSpace::blowup(n);
    std::vector<MvPoly> full(tuples.size()), bad(tuples.size());
    parallel_for(tuples.size(), [&](std::size_t t) {
        MvPoly p = MvPoly::constant(space, 1);
        for (std::size_t i : tuples[t]) p = p * deltas[i];
        MvPoly proj(space);
        for (const auto& [mono, c] : p.terms())
            for (int i = 1; i <= n; ++i)
                if (mono[space.x_index(i)] + mono[space.y_index(i)] < k) {
                    proj.add_term(mono, c);
                    break;
                }
        full[t] = std::move(p);
        bad[t] = std::move(proj);
    });
    const auto rank = [](std::vector<MvPoly> v) {
        v = dedupe(std::move(v));
        return static_cast<int>(row_reduce_lex(v).basis.size());
    };
    return rank(std::move(full)) - rank(std::move(bad));
}

SurjectivityReport check_surjectivity(int n, int m, int k, int D, const SectionCaps& caps) {
    SectionSpaceSpec{n, m, k, D, Ambient::blowup}.validate(caps);
    if (m < 1) throw UsageError("check_surjectivity: need m >= 1");

    // Degree-one pieces A^1_{>=j}, j = 0..k, as bases per bidegree.
    struct Piece {
        int lift;
        std::pair<int, int> bideg;
        int degree;
        MvPoly poly;
    };
    std::vector<Piece> pieces;
    for (int j = 0; j <= k; ++j) {
        const GradedSections one = graded_sections({n, 1, j, D, Ambient::blowup}, caps);
        for (const auto& p : one.pieces)
            for (const auto& b : p.echelon.basis) pieces.push_back({j, {p.dq, p.dt}, p.dq + p.dt, b});
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& l, const Piece& r) { return l.degree < r.degree; });

    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> idx;
    std::function<void(std::size_t, int, int)> rec = [&](std::size_t start, int deg_left, int lift_left) {
        const int slots = m - static_cast<int>(idx.size());
        if (slots == 0) {
            if (lift_left == 0) tuples.push_back(idx);
            return;
        }
        for (std::size_t i = start; i < pieces.size(); ++i) {
            if (pieces[i].degree * slots > deg_left) break;
            if (pieces[i].lift > lift_left) continue;
            idx.push_back(i);
            rec(i, deg_left - pieces[i].degree, lift_left - pieces[i].lift);
            idx.pop_back();
        }
    };
    rec(0, D, k);

    const VarSpace space = VarSpace::blowup(n);
    std::vector<MvPoly> products(tuples.size());
    parallel_for(tuples.size(), [&](std::size_t t) {
        MvPoly p = MvPoly::constant(space, 1);
        for (std::size_t i : tuples[t]) p = p * pieces[i].poly;
        products[t] = std::move(p);
    });

    const auto degs = bidegrees_upto(D);
    std::map<std::pair<int, int>, std::vector<MvPoly>> groups;
    for (auto& p : products)
        if (!p.is_zero()) groups[p.bidegree()].push_back(std::move(p));

    SurjectivityReport report;
    report.entries.resize(degs.size());
    parallel_for(degs.size(), [&](std::size_t i) {
        const auto [dq, dt] = degs[i];
        auto it = groups.find(degs[i]);
        int product_rank = 0;
        if (it != groups.end()) {
            const auto polys = dedupe(it->second);
            product_rank = static_cast<int>(row_reduce_lex(polys).basis.size());
        }
        report.entries[i] = {dq, dt, product_rank, support_subspace_dim(n, m, k, dq, dt)};
    });
    return report;
}

}  // namespace nhilb

#include "nhilb/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "nhilb/errors.hpp"
#include "nhilb/parallel.hpp"

namespace nhilb {

// ---------------------------------------------------------------------------
// PointSet

PointSet PointSet::from_exponents(std::span<const int> exps) {
    if (exps.size() % 2 != 0) throw UsageError("exponent vector must have even length");
    const std::size_t n = exps.size() / 2;
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {exps[i], exps[n + i]};
    return PointSet(std::move(pts));
}

bool PointSet::is_lex_sorted() const { return std::is_sorted(points_.begin(), points_.end()); }

bool PointSet::is_strict() const {
    return std::adjacent_find(points_.begin(), points_.end(),
                              [](const Point& l, const Point& r) { return !(l < r); }) == points_.end();
}

int PointSet::degree() const {
    const auto [da, db] = bidegree();
    return da + db;
}

std::pair<int, int> PointSet::bidegree() const {
    int da = 0, db = 0;
    for (const auto& p : points_) {
        da += p.a;
        db += p.b;
    }
    return {da, db};
}

std::vector<int> PointSet::exponents() const {
    const std::size_t n = points_.size();
    std::vector<int> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = points_[i].a;
        out[n + i] = points_[i].b;
    }
    return out;
}

PointSet PointSet::operator+(const PointSet& other) const {
    if (size() != other.size()) throw UsageError("adding point sets of different sizes");
    std::vector<Point> out(points_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = points_[i] + other.points_[i];
    return PointSet(std::move(out));
}

std::string PointSet::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i) os << ',';
        os << '(' << points_[i].a << ',' << points_[i].b << ')';
    }
    return os.str();
}

nlohmann::json PointSet::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : points_) out.push_back({p.a, p.b});
    return out;
}

PointSet PointSet::parse(const std::string& text) {
    std::vector<Point> pts;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw UsageError("malformed point list near position " + std::to_string(pos) + ": expected '" +
                             std::string(1, c) + "'");
        ++pos;
    };
    auto integer = [&] {
        skip_ws();
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(text.substr(pos), &used);
        } catch (const std::exception&) {
            throw UsageError("malformed point list near position " + std::to_string(pos) + ": expected integer");
        }
        pos += used;
        return v;
    };
    skip_ws();
    while (pos < text.size()) {
        expect('(');
        const int a = integer();
        expect(',');
        const int b = integer();
        expect(')');
        pts.push_back({a, b});
        skip_ws();
        if (pos < text.size()) expect(',');
        skip_ws();
    }
    return PointSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// P(m,k)

namespace {

// Lower bound on b_j from condition (3); depends only on the a-vector.
int support_bound(std::span<const int> a, std::size_t j, int m, int k) {
    int lb = std::max(k - a[j], 0);
    for (std::size_t i = 0; i < j; ++i) lb += std::max(m - (a[j] - a[i]), 0);
    return lb;
}

}  // namespace

bool in_P(const PointSet& pt, int m, int k) {
    std::vector<int> a(pt.size());
    for (std::size_t j = 0; j < pt.size(); ++j) a[j] = pt[j].a;
    for (std::size_t j = 0; j < pt.size(); ++j) {
        if (a[j] < 0 || pt[j].b < 0) return false;
        if (j > 0 && a[j] < a[j - 1]) return false;
        if (j > 0 && a[j] == a[j - 1] && pt[j].b < pt[j - 1].b + m) return false;
        if (pt[j].b < support_bound(a, j, m, k)) return false;
    }
    return true;
}

namespace {

// Nondecreasing a-vectors whose forced b-mass still fits in degree D.
std::vector<std::vector<int>> feasible_a_vectors(int n, int m, int k, int D) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(n);
    std::function<void(int, int)> rec = [&](int j, int used) {
        if (j == n) {
            int forced = 0;
            for (int i = 0; i < n; ++i) forced += support_bound(a, i, m, k);
            if (used + forced <= D) out.push_back(a);
            return;
        }
        for (int v = (j == 0 ? 0 : a[j - 1]); used + v * (n - j) <= D; ++v) {
            a[j] = v;
            rec(j + 1, used + v);
        }
    };
    rec(0, 0);
    return out;
}

void enumerate_b(const std::vector<int>& a, int m, int k, int D, std::vector<PointSet>& out) {
    const int n = static_cast<int>(a.size());
    std::vector<int> base(n), tail(n + 1, 0);
    for (int j = 0; j < n; ++j) base[j] = support_bound(a, j, m, k);
    for (int j = n - 1; j >= 0; --j) tail[j] = tail[j + 1] + base[j];

    const int budget = D - std::accumulate(a.begin(), a.end(), 0);
    std::vector<Point> pts(n);
    std::function<void(int, int)> rec = [&](int j, int used) {
        if (j == n) {
            out.emplace_back(pts);
            return;
        }
        int lb = base[j];
        if (j > 0 && a[j] == a[j - 1]) lb = std::max(lb, pts[j - 1].b + m);
        for (int b = lb; used + b + tail[j + 1] <= budget; ++b) {
            pts[j] = {a[j], b};
            rec(j + 1, used + b);
        }
    };
    rec(0, 0);
}

void check_enum_args(int n, int m, int k, int D) {
    if (n < 0 || D < 0) throw UsageError("enumerate_P: n and D must be >= 0");
    if (m < 0 || k < 0) throw UsageError("enumerate_P: m and k must be >= 0");
}

}  // namespace

std::vector<PointSet> enumerate_P_serial(int n, int m, int k, int D) {
    check_enum_args(n, m, k, D);
    std::vector<PointSet> out;
    for (const auto& a : feasible_a_vectors(n, m, k, D)) enumerate_b(a, m, k, D, out);
    return out;
}

std::vector<PointSet> enumerate_P(int n, int m, int k, int D) {
    check_enum_args(n, m, k, D);
    const auto avecs = feasible_a_vectors(n, m, k, D);
    std::vector<std::vector<PointSet>> chunks(avecs.size());
    parallel_for(avecs.size(), [&](std::size_t i) { enumerate_b(avecs[i], m, k, D, chunks[i]); });

    std::vector<PointSet> out;
    for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(out));
    return out;
}

QTSeries lattice_sum(int n, int separation, int support, int D) {
    QTSeries out(D);
    for (const auto& p : enumerate_P(n, separation, support, D)) {
        const auto [da, db] = p.bidegree();
        out.add(da, db, 1);
    }
    return out;
}

QTSeries hilbert_series(int n, int m, int k, int D) {
    if (m + k < 0 || k < 0) throw UsageError("hilbert_series: need k >= 0 and m + k >= 0");
    return lattice_sum(n, m + k, k, D) * QTSeries::inverse_binomials({{1, 0}, {0, 1}}, D);
}

// ---------------------------------------------------------------------------
// Lifts

PointSet k_lift(const PointSet& s, int k) {
    if (k < 0) throw UsageError("k_lift: k must be >= 0");
    std::vector<Point> out;
    out.reserve(s.size());
    for (const auto& p : s) out.push_back({p.a, p.b + std::max(k - p.a, 0)});
    PointSet lifted(std::move(out));
    if (s.is_lex_sorted() && !lifted.is_lex_sorted()) throw InternalError("k_lift broke lexicographic order");
    return lifted;
}

PointSet k_unlift(const PointSet& s, int k) {
    if (k < 0) throw UsageError("k_unlift: k must be >= 0");
    std::vector<Point> out;
    out.reserve(s.size());
    for (const auto& p : s) {
        const int shift = std::max(k - p.a, 0);
        if (p.b < shift) throw DomainError("k_unlift: point " + PointSet({p}).to_string() + " lies below the lift");
        out.push_back({p.a, p.b - shift});
    }
    return PointSet(std::move(out));
}

LiftDecomposition lift_decompose(std::span<const PointSet> parts, int k) {
    if (k < 0) throw UsageError("lift_decompose: k must be >= 0");
    const std::size_t m = parts.size();
    if (m == 0) {
        if (k != 0) throw UsageError("lift_decompose: no parts to distribute k over");
        return {};
    }
    const std::size_t n = parts.front().size();
    for (const auto& p : parts)
        if (p.size() != n) throw UsageError("lift_decompose: parts have different sizes");

    PointSet total = parts.front();
    for (std::size_t i = 1; i < m; ++i) total = total + parts[i];

    LiftDecomposition result;
    result.ks.assign(m, 0);
    result.history.push_back(result.ks);
    for (int current = 0; current < k; ++current) {
        std::size_t choice = 0;
        std::size_t j = 0;
        while (j < n && total[j].a <= current) ++j;
        if (j < n) {
            choice = m;
            for (std::size_t i = 0; i < m; ++i)
                if (parts[i][j].a > result.ks[i]) {
                    choice = i;
                    break;
                }
            if (choice == m) throw InternalError("lift_decompose: no part can absorb the next unit of lift");
        }
        ++result.ks[choice];
        result.history.push_back(result.ks);

        // Points already fully lifted in the total must be fully lifted in every part.
        for (std::size_t jj = 0; jj < n; ++jj)
            if (total[jj].a <= current + 1)
                for (std::size_t i = 0; i < m; ++i)
                    if (parts[i][jj].a > result.ks[i])
                        throw InternalError("lift_decompose: auxiliary invariant violated");
    }

    PointSet rebuilt = k_lift(parts.front(), result.ks.front());
    for (std::size_t i = 1; i < m; ++i) rebuilt = rebuilt + k_lift(parts[i], result.ks[i]);
    if (rebuilt != k_lift(total, k)) throw InternalError("lift_decompose: lifted sum identity failed");
    return result;
}

// ---------------------------------------------------------------------------
// Sum decomposition

namespace {

class SumSearch {
public:
    SumSearch(const PointSet& target, int m) : target_(target), m_(m), rows_(m) {}

    std::optional<std::vector<PointSet>> run() {
        if (!place(0)) return std::nullopt;
        std::vector<PointSet> out;
        for (auto& r : rows_) out.emplace_back(r);
        return out;
    }

private:
    // True if summand i has the same prefix as summand i-1 (labels < j).
    bool same_prefix(int i, std::size_t j) const {
        for (std::size_t l = 0; l < j; ++l)
            if (rows_[i][l] != rows_[i - 1][l]) return false;
        return true;
    }

    bool place(std::size_t j) {
        if (j == target_.size()) return true;
        for (auto& r : rows_) r.resize(j + 1);
        return split(j, 0, target_[j]);
    }

    bool admissible(int i, std::size_t j, const Point& p) const {
        if (p.a < 0 || p.b < 0) return false;
        if (j > 0 && !(rows_[i][j - 1] < p)) return false;
        if (i > 0 && same_prefix(i, j) && p < rows_[i - 1][j]) return false;
        return true;
    }

    bool split(std::size_t j, int i, Point remaining) {
        if (i == m_ - 1) {
            if (!admissible(i, j, remaining)) return false;
            rows_[i][j] = remaining;
            if (place(j + 1)) return true;
            for (auto& r : rows_) r.resize(j + 1);
            return false;
        }
        for (int a = 0; a <= remaining.a; ++a)
            for (int b = 0; b <= remaining.b; ++b) {
                const Point p{a, b};
                if (!admissible(i, j, p)) continue;
                rows_[i][j] = p;
                if (split(j, i + 1, {remaining.a - a, remaining.b - b})) return true;
            }
        return false;
    }

    const PointSet& target_;
    int m_;
    std::vector<std::vector<Point>> rows_;
};

}  // namespace

std::optional<std::vector<PointSet>> sum_decompose(const PointSet& s, int m) {
    if (m < 1) throw UsageError("sum_decompose: m must be >= 1");
    if (!s.is_lex_sorted()) throw UsageError("sum_decompose: points must be lex-sorted");
    auto result = SumSearch(s, m).run();
    if (result) {
        PointSet total = result->front();
        for (std::size_t i = 1; i < result->size(); ++i) total = total + (*result)[i];
        if (total != s) throw InternalError("sum_decompose: summands do not add up");
        for (const auto& part : *result)
            if (!part.is_strict()) throw InternalError("sum_decompose: summand is not strictly increasing");
    }
    return result;
}

// ---------------------------------------------------------------------------
// Newton-Okounkov polyhedron

bool Halfspace::contains(std::span<const Rational> v) const {
    if (v.size() != normal.size()) throw UsageError("halfspace dimension mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (normal[i] != 0) acc += normal[i] * v[i];
    return acc >= offset;
}

std::vector<Halfspace> okounkov_halfspaces(int n, int M, int k) {
    if (n < 1) throw UsageError("okounkov_halfspaces: n must be >= 1");
    if (M < 0 || k < 0) throw UsageError("okounkov_halfspaces: M and k must be >= 0");
    const int dim = 2 * n;
    std::vector<Halfspace> out;

    Halfspace first{std::vector<int>(dim, 0), 0};
    first.normal[0] = 1;
    out.push_back(first);
    for (int j = 1; j < n; ++j) {
        Halfspace h{std::vector<int>(dim, 0), 0};
        h.normal[j] = 1;
        h.normal[j - 1] = -1;
        out.push_back(h);
    }
    // Each max(x, 0) term splits into "keep x" or "keep 0"; T records the kept terms.
    for (int j = 0; j < n; ++j) {
        for (unsigned earlier = 0; earlier < (1u << j); ++earlier) {
            for (int self = 0; self <= 1; ++self) {
                Halfspace h{std::vector<int>(dim, 0), 0};
                h.normal[n + j] = 1;
                int count = self;
                for (int i = 0; i < j; ++i) {
                    if (!(earlier & (1u << i))) continue;
                    ++count;
                    h.normal[i] -= 1;
                    h.offset += M;
                }
                h.normal[j] += count;
                if (self) h.offset += k;
                out.push_back(h);
            }
        }
    }
    return out;
}

bool in_halfspaces(std::span<const Halfspace> hs, std::span<const Rational> v) {
    return std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return h.contains(v); });
}

bool in_delta(std::span<const Rational> v, int M, int k) {
    if (v.size() % 2 != 0) throw UsageError("in_delta: vector must have even length");
    const std::size_t n = v.size() / 2;
    for (std::size_t j = 0; j < n; ++j) {
        const Rational& a = v[j];
        if (a < 0 || (j > 0 && a < v[j - 1])) return false;
        Rational bound = k - a;
        if (bound < 0) bound = 0;
        for (std::size_t i = 0; i < j; ++i) {
            Rational term = M - (a - v[i]);
            if (term > 0) bound += term;
        }
        if (v[n + j] < bound) return false;
    }
    return true;
}

bool nk_body_membership(std::span<const Rational> v, int m, int k) {
    if (v.size() < 2 || v.size() % 2 != 0) throw UsageError("nk_body_membership: vector length must be 2n+2");
    if (v[0] < 0 || v[1] < 0) return false;
    return in_delta(v.subspan(2), m + k, k);
}

// ---------------------------------------------------------------------------
// Six cones for n = 2, P(2,1)

std::vector<ConeRecord> printed_cones_n2() {
    return {
        {"a", {0, 0, 1, 3}, {{0, 0, 1, 1}, {0, 0, 0, 1}}, 0, 4, {{0, 1}, {0, 2}}},
        {"b", {0, 1, 1, 1}, {{0, 0, 1, 0}, {0, 0, 0, 1}}, 1, 2, {{0, 1}, {0, 1}}},
        {"c", {0, 2, 1, 0}, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 2, 1, {{1, 0}, {0, 1}, {0, 1}}},
        {"d", {1, 1, 0, 2}, {{1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}, 2, 2, {{2, 0}, {0, 1}, {0, 2}}},
        {"e", {1, 2, 0, 1}, {{1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 3, 1, {{2, 0}, {0, 1}, {0, 1}}},
        {"f",
         {1, 3, 0, 0},
         {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
         4,
         0,
         {{1, 0}, {2, 0}, {0, 1}, {0, 1}}},
    };
}

namespace {

std::pair<int, int> weight_of(const std::vector<int>& v) { return {v[0] + v[1], v[2] + v[3]}; }

}  // namespace

QTSeries cone_series(const ConeRecord& cone, int D) {
    std::vector<std::pair<int, int>> denominators;
    for (const auto& r : cone.rays) denominators.push_back(weight_of(r));
    const auto [vq, vt] = weight_of(cone.vertex);
    return QTSeries::monomial(vq, vt, D) * QTSeries::inverse_binomials(denominators, D);
}

QTSeries cone_printed_series(const ConeRecord& cone, int D) {
    return QTSeries::monomial(cone.printed_q, cone.printed_t, D) *
           QTSeries::inverse_binomials(cone.printed_denominator, D);
}

std::vector<PointSet> cone_points(const ConeRecord& cone, int D) {
    std::vector<PointSet> out;
    std::vector<int> current = cone.vertex;
    auto degree = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); };
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
        if (degree(current) > D) return;
        if (r == cone.rays.size()) {
            out.push_back(PointSet::from_exponents(current));
            return;
        }
        const auto& ray = cone.rays[r];
        if (degree(ray) <= 0) throw InternalError("cone ray without positive degree");
        std::vector<int> saved = current;
        while (degree(current) <= D) {
            rec(r + 1);
            for (std::size_t i = 0; i < current.size(); ++i) current[i] += ray[i];
        }
        current = saved;
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nhilb

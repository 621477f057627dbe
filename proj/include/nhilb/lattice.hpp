#pragma once

// Point-set combinatorics for trailing-term exponents.
//
// A point (a_1..a_n, b_1..b_n) of Z^{2n} is handled as the labeled tuple of
// plane points (a_1,b_1), ..., (a_n,b_n). P(m,k) is the set of such tuples with
//   (1) 0 <= a_1 <= ... <= a_n,
//   (2) b_{j+1} >= b_j + m whenever a_j == a_{j+1},
//   (3) b_j >= max(k - a_j, 0) + sum_{i<j} max(m - (a_j - a_i), 0).
// m is the separation parameter and k the support parameter.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nhilb/qtseries.hpp"
#include "nhilb/rational.hpp"

namespace nhilb {

struct Point {
    int a = 0;
    int b = 0;

    Point operator+(const Point& o) const { return {a + o.a, b + o.b}; }
    friend auto operator<=>(const Point&, const Point&) = default;
};

class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {}
    // Inverse of exponents(): (a_1..a_n, b_1..b_n).
    static PointSet from_exponents(std::span<const int> exps);

    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    bool is_lex_sorted() const;  // weakly increasing
    bool is_strict() const;      // strictly increasing, hence distinct
    int degree() const;          // sum of all coordinates
    std::pair<int, int> bidegree() const;  // (sum a, sum b)
    std::vector<int> exponents() const;

    // Pointwise sum in the fixed labeling; sizes must agree.
    PointSet operator+(const PointSet& other) const;

    std::string to_string() const;  // "(a,b),(a,b),..."
    nlohmann::json to_json() const;
    static PointSet parse(const std::string& text);  // "(a,b),(a,b)" with free whitespace

    friend auto operator<=>(const PointSet&, const PointSet&) = default;

private:
    std::vector<Point> points_;
};

bool in_P(const PointSet& pt, int m, int k);

// All elements of P(m,k) with total degree sum(a)+sum(b) <= D, ordered by
// a-vector (lexicographically) and then by b-vector.
std::vector<PointSet> enumerate_P(int n, int m, int k, int D);
std::vector<PointSet> enumerate_P_serial(int n, int m, int k, int D);

// (1/((1-q)(1-t))) * sum over P(m+k,k) of q^{sum a} t^{sum b}, through degree D.
QTSeries hilbert_series(int n, int m, int k, int D);
// Just the lattice sum, without the 1/((1-q)(1-t)) factor.
QTSeries lattice_sum(int n, int separation, int support, int D);

PointSet k_lift(const PointSet& s, int k);
PointSet k_unlift(const PointSet& s, int k);

// Lift compositions: k_1..k_m >= 0 with sum k and
// l_k(S^(1)+...+S^(m)) = l_{k_1}(S^(1)) + ... + l_{k_m}(S^(m)).
struct LiftDecomposition {
    std::vector<int> ks;
    std::vector<std::vector<int>> history;  // ks after each unit step, history[0] all zeros
};
LiftDecomposition lift_decompose(std::span<const PointSet> parts, int k);

// Writes S as a pointwise sum of m strictly lex-increasing point sets.
// Exhaustive search; nullopt certifies that no decomposition exists.
std::optional<std::vector<PointSet>> sum_decompose(const PointSet& s, int m);

// ---------------------------------------------------------------------------
// Newton-Okounkov polyhedron Delta(M,k) in R^{2n}, coordinates
// (a_1..a_n, b_1..b_n): 0 <= a_1 <= ... <= a_n and
// b_j >= max(k - a_j, 0) + sum_{i<j} max(M - (a_j - a_i), 0).

struct Halfspace {
    std::vector<int> normal;
    int offset = 0;  // normal . v >= offset

    bool contains(std::span<const Rational> v) const;
    nlohmann::json to_json() const { return {{"normal", normal}, {"offset", offset}}; }
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

std::vector<Halfspace> okounkov_halfspaces(int n, int M, int k);
bool in_delta(std::span<const Rational> v, int M, int k);  // direct max-formula evaluation
bool in_halfspaces(std::span<const Halfspace> hs, std::span<const Rational> v);

// v = (a, b, a_1..a_n, b_1..b_n): a, b >= 0 and the rest in Delta(m+k, k).
bool nk_body_membership(std::span<const Rational> v, int m, int k);

// ---------------------------------------------------------------------------
// Hard-coded six-cone decomposition of P(2,1) for n = 2.

struct ConeRecord {
    std::string label;
    std::vector<int> vertex;             // (a_1, a_2, b_1, b_2)
    std::vector<std::vector<int>> rays;  // same coordinates
    // The rational function as printed: q^pq t^pt / prod (1 - q^a t^b).
    int printed_q = 0;
    int printed_t = 0;
    std::vector<std::pair<int, int>> printed_denominator;
};

std::vector<ConeRecord> printed_cones_n2();
// Weighted sum over vertex + N-combinations of rays, derived from the record.
QTSeries cone_series(const ConeRecord& cone, int D);
QTSeries cone_printed_series(const ConeRecord& cone, int D);
// Integer points vertex + sum c_r ray_r with total degree <= D.
std::vector<PointSet> cone_points(const ConeRecord& cone, int D);

}  // namespace nhilb

#pragma once

// Torus-localization sum for the Euler characteristic of O(m,k) on the
// nested Hilbert scheme Hilb^{n,n+1}(C^2).
//
// Each nested pair contributes
//
//     box^k * prod_{c in lambda} c^{k+m}
//   -------------------------------------------------
//   (1-q)(1-t) * prod over cells of mu other than box
//
// with two binomials (1 - q^a t^b) per cell whose exponents depend on the
// cell's arm/leg in mu and on whether it shares a row or a column with box.
// Terms are expanded as Laurent series in the weight order w(q^a t^b) =
// a + W b, W = n + 2, where no binomial has zero weight.

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nhilb/qtseries.hpp"
#include "nhilb/rational.hpp"
#include "nhilb/young.hpp"

namespace nhilb {

// The factor (1 - q^a t^b).
struct Binomial {
    int a = 0;
    int b = 0;

    friend auto operator<=>(const Binomial&, const Binomial&) = default;
};

// Exponent of the form per_m * m + per_k * k + constant.
struct AffineExponent {
    int per_m = 0;
    int per_k = 0;
    int constant = 0;

    int at(int m, int k) const { return per_m * m + per_k * k + constant; }
    std::string to_string() const;  // e.g. "m+3k"
    friend bool operator==(const AffineExponent&, const AffineExponent&) = default;
};

// Fixed-point contribution with m, k left symbolic. The (1-q)(1-t) pair
// common to every term is implicit and not listed in `binomials`.
struct SymbolicTerm {
    AffineExponent q_exp;
    AffineExponent t_exp;
    std::vector<Binomial> binomials;  // sorted multiset
};

struct RationalTerm {
    int q_exp = 0;
    int t_exp = 0;
    std::vector<Binomial> binomials;  // sorted multiset, global pair excluded

    static constexpr Binomial kGlobal[2] = {{1, 0}, {0, 1}};
    std::string to_string() const;
};

SymbolicTerm symbolic_fixed_point_term(const NestedPair& p);
RationalTerm fixed_point_term(const NestedPair& p, int m, int k);

inline int generic_weight(int n) { return n + 2; }

// Laurent series in q, t holding every term of weighted degree <= bound.
class LaurentSeries {
public:
    LaurentSeries(int weight_t, long bound) : weight_t_(weight_t), bound_(bound) {}

    long weight(int i, int j) const { return static_cast<long>(i) + static_cast<long>(weight_t_) * j; }
    int weight_t() const { return weight_t_; }
    long bound() const { return bound_; }
    const std::map<std::pair<int, int>, Rational>& coeffs() const { return coeffs_; }

    void add(int i, int j, const Rational& c);
    LaurentSeries& operator+=(const LaurentSeries& other);
    // Multiplies by 1/(1-u) for u = q^a t^b of positive weight.
    void multiply_geometric(int a, int b);

private:
    int weight_t_;
    long bound_;
    std::map<std::pair<int, int>, Rational> coeffs_;
};

// Expansion of the term, global (1-q)(1-t) included, exact through weighted
// degree W * D. Factors of negative weight are flipped through
// 1/(1-u) = -u^{-1}/(1-u^{-1}); a zero-weight factor is an InternalError.
LaurentSeries expand_term(const RationalTerm& term, int D, int weight_t);

// Sum of all fixed-point contributions through total degree D. Throws
// ConsistencyError if a negative exponent or a non-integer coefficient
// survives the summation.
QTSeries chi_series(int n, int m, int k, int D);
QTSeries chi_series_serial(int n, int m, int k, int D);

// For m, k > 0 the Euler characteristic is the character of H^0.
inline bool chi_is_h0_character(int m, int k) { return m > 0 && k > 0; }

}  // namespace nhilb

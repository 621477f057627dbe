#pragma once

// Bivariate power series in (q, t) truncated at total degree D.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nhilb/rational.hpp"

namespace nhilb {

struct CoefficientMismatch {
    int dq = 0;
    int dt = 0;
    Rational lhs;
    Rational rhs;
};

class QTSeries {
public:
    using Key = std::pair<int, int>;

    explicit QTSeries(int truncation = 0);

    int truncation() const { return truncation_; }
    const std::map<Key, Rational>& coeffs() const { return coeffs_; }

    Rational coefficient(int dq, int dt) const;
    // Terms beyond the truncation are dropped; negative exponents are rejected.
    void add(int dq, int dt, const Rational& c);

    QTSeries operator+(const QTSeries& other) const;
    QTSeries operator*(const QTSeries& other) const;
    QTSeries& operator+=(const QTSeries& other);
    QTSeries swapped() const;  // q <-> t

    // 1 / prod (1 - q^a t^b) over the given (a, b) with a, b >= 0, not both 0.
    static QTSeries inverse_binomials(const std::vector<std::pair<int, int>>& factors, int truncation);
    static QTSeries monomial(int dq, int dt, int truncation, const Rational& c = 1);

    bool all_nonnegative_integers() const;
    // First differing coefficient in (dq+dt, dq) order over the common truncation.
    std::optional<CoefficientMismatch> first_mismatch(const QTSeries& other) const;

    // Terms sorted by (dq + dt, dq).
    std::vector<std::tuple<int, int, Rational>> sorted_terms() const;
    nlohmann::json coeffs_json() const;
    std::string to_string() const;

    friend bool operator==(const QTSeries& a, const QTSeries& b) {
        return a.truncation_ == b.truncation_ && a.coeffs_ == b.coeffs_;
    }

private:
    int truncation_;
    std::map<Key, Rational> coeffs_;
};

}  // namespace nhilb

#pragma once

// Sparse multivariate polynomials over Q in the point variables
// x_1..x_n, y_1..y_n, optionally preceded by the ambient pair x, y.
//
// Monomials are compared lexicographically on their exponent vector in
// variable order (x, y, x_1, ..., x_n, y_1, ..., y_n); the trailing term of a
// polynomial is its lex-minimal term. Bidegree counts x-type exponents as the
// q-degree and y-type exponents as the t-degree.

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nhilb/rational.hpp"

namespace nhilb {

struct VarSpace {
    int n = 0;
    bool includes_xy = false;

    int size() const { return 2 * n + (includes_xy ? 2 : 0); }
    int offset() const { return includes_xy ? 2 : 0; }
    // Point indices are 1-based to match x_1..x_n.
    int x_index(int i) const { return offset() + i - 1; }
    int y_index(int i) const { return offset() + n + i - 1; }
    int ambient_x() const;
    int ambient_y() const;
    bool is_x_type(int var) const;
    std::string var_name(int var) const;

    static VarSpace blowup(int n) { return {n, false}; }
    static VarSpace nested(int n) { return {n, true}; }

    friend bool operator==(const VarSpace&, const VarSpace&) = default;
};

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}
    static Monomial one(const VarSpace& space) { return Monomial(std::vector<int>(space.size(), 0)); }

    std::size_t size() const { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    int& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<int>& exps() const { return exps_; }

    bool has_negative() const;
    Monomial operator*(const Monomial& other) const;
    std::pair<int, int> bidegree(const VarSpace& space) const;

    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<int> exps_;
};

// Lexicographic comparison in the fixed variable order; throws UsageError if
// the monomials live in spaces of different size.
std::strong_ordering lex_compare(const Monomial& a, const Monomial& b);

std::string monomial_to_string(const Monomial& m, const VarSpace& space);

class MvPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    MvPoly() = default;
    explicit MvPoly(VarSpace space, bool laurent = false) : space_(space), laurent_(laurent) {}

    static MvPoly constant(VarSpace space, const Rational& c);
    static MvPoly monomial(VarSpace space, Monomial m, const Rational& c = 1);
    static MvPoly variable(VarSpace space, int var);

    const VarSpace& space() const { return space_; }
    bool is_laurent() const { return laurent_; }
    const TermMap& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const;
    // Adds c to the coefficient of m, dropping the term if it cancels.
    void add_term(const Monomial& m, const Rational& c);

    MvPoly operator-() const;
    MvPoly operator+(const MvPoly& other) const;
    MvPoly operator-(const MvPoly& other) const;
    MvPoly operator*(const MvPoly& other) const;
    MvPoly scaled(const Rational& c) const;
    MvPoly pow(unsigned e) const;
    MvPoly& operator+=(const MvPoly& other);

    // Lex-minimal term; DomainError on the zero polynomial.
    std::pair<Monomial, Rational> trailing_term() const;

    // Bidegree of the polynomial if every term shares it.
    bool is_bihomogeneous() const;
    std::pair<int, int> bidegree() const;
    MvPoly graded_component(int dq, int dt) const;

    // Permutes the point indices: variable x_i goes to x_{perm[i-1]+1}, same for y.
    MvPoly permute_points(std::span<const int> perm) const;

    std::string to_string() const;
    nlohmann::json to_json() const;
    static MvPoly from_json(VarSpace space, const nlohmann::json& j);

    friend bool operator==(const MvPoly& a, const MvPoly& b) {
        return a.space_ == b.space_ && a.terms_ == b.terms_;
    }

private:
    void check_space(const MvPoly& other) const;

    VarSpace space_;
    bool laurent_ = false;
    TermMap terms_;
};

// Row echelon form pivoting on lex-minimal monomials. Each basis element
// has a distinct trailing monomial with coefficient 1, so the trailing set
// of the span is exactly the set of basis trailing monomials.
struct EchelonResult {
    std::vector<MvPoly> basis;
    std::vector<Monomial> trailing;  // lex-increasing
};

EchelonResult row_reduce_lex(std::span<const MvPoly> gens);

// Incremental sparse elimination over Q on integer column indices, where a
// smaller index means a lex-smaller monomial. Used directly by the section
// computations to avoid rebuilding maps per generator.
class SparseEchelon {
public:
    using Row = std::vector<std::pair<int, Rational>>;  // sorted by column, no zeros

    // Reduces the row against the current pivots; if something survives it is
    // normalized and stored. Returns true when the rank grew.
    bool insert(Row row);
    // Reduces a row to its normal form without inserting it.
    Row reduce(Row row) const;

    std::size_t rank() const { return rows_.size(); }
    std::vector<int> pivot_columns() const;
    const std::map<int, Row>& rows() const { return rows_; }

private:
    std::map<int, Row> rows_;  // keyed by pivot column
};

}  // namespace nhilb

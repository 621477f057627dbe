#include "nhilb/mvpoly.hpp"

#include <algorithm>
#include <sstream>

#include "nhilb/errors.hpp"

namespace nhilb {

int VarSpace::ambient_x() const {
    if (!includes_xy) throw UsageError("variable space has no ambient x");
    return 0;
}

int VarSpace::ambient_y() const {
    if (!includes_xy) throw UsageError("variable space has no ambient y");
    return 1;
}

bool VarSpace::is_x_type(int var) const {
    if (includes_xy && var < 2) return var == 0;
    return var - offset() < n;
}

std::string VarSpace::var_name(int var) const {
    if (includes_xy && var < 2) return var == 0 ? "x" : "y";
    const int local = var - offset();
    if (local < n) return "x" + std::to_string(local + 1);
    return "y" + std::to_string(local - n + 1);
}

bool Monomial::has_negative() const {
    return std::any_of(exps_.begin(), exps_.end(), [](int e) { return e < 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (size() != other.size()) throw UsageError("monomials from different variable spaces");
    std::vector<int> out(exps_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.exps_[i];
    return Monomial(std::move(out));
}

std::pair<int, int> Monomial::bidegree(const VarSpace& space) const {
    int dq = 0, dt = 0;
    for (int v = 0; v < space.size(); ++v) (space.is_x_type(v) ? dq : dt) += exps_[v];
    return {dq, dt};
}

std::strong_ordering lex_compare(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) throw UsageError("lex_compare: monomials from different variable spaces");
    return a <=> b;
}

std::string monomial_to_string(const Monomial& m, const VarSpace& space) {
    std::string out;
    for (int v = 0; v < space.size(); ++v) {
        if (m[v] == 0) continue;
        if (!out.empty()) out += ' ';
        out += space.var_name(v);
        if (m[v] != 1) out += '^' + std::to_string(m[v]);
    }
    return out.empty() ? "1" : out;
}

MvPoly MvPoly::constant(VarSpace space, const Rational& c) {
    return monomial(space, Monomial::one(space), c);
}

MvPoly MvPoly::monomial(VarSpace space, Monomial m, const Rational& c) {
    if (static_cast<int>(m.size()) != space.size()) throw UsageError("monomial length does not match space");
    const bool laurent = m.has_negative();
    MvPoly p(space, laurent);
    p.add_term(m, c);
    return p;
}

MvPoly MvPoly::variable(VarSpace space, int var) {
    Monomial m = Monomial::one(space);
    m[var] = 1;
    return monomial(space, std::move(m));
}

Rational MvPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MvPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(m.size()) != space_.size()) throw UsageError("monomial length does not match space");
    if (!laurent_ && m.has_negative()) throw DomainError("negative exponent in a polynomial (non-Laurent) context");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void MvPoly::check_space(const MvPoly& other) const {
    if (!(space_ == other.space_)) throw UsageError("polynomials from different variable spaces");
}

MvPoly MvPoly::operator-() const {
    MvPoly out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

MvPoly& MvPoly::operator+=(const MvPoly& other) {
    check_space(other);
    laurent_ = laurent_ || other.laurent_;
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

MvPoly MvPoly::operator+(const MvPoly& other) const {
    MvPoly out(*this);
    out += other;
    return out;
}

MvPoly MvPoly::operator-(const MvPoly& other) const { return *this + (-other); }

MvPoly MvPoly::operator*(const MvPoly& other) const {
    check_space(other);
    MvPoly out(space_, laurent_ || other.laurent_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

MvPoly MvPoly::scaled(const Rational& c) const {
    if (c == 0) return MvPoly(space_, laurent_);
    MvPoly out(*this);
    for (auto& [m, coeff] : out.terms_) coeff *= c;
    return out;
}

MvPoly MvPoly::pow(unsigned e) const {
    MvPoly result = constant(space_, 1);
    MvPoly base(*this);
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::pair<Monomial, Rational> MvPoly::trailing_term() const {
    if (terms_.empty()) throw DomainError("trailing_term of the zero polynomial");
    return *terms_.begin();
}

bool MvPoly::is_bihomogeneous() const {
    if (terms_.empty()) return true;
    const auto bd = terms_.begin()->first.bidegree(space_);
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return t.first.bidegree(space_) == bd; });
}

std::pair<int, int> MvPoly::bidegree() const {
    if (terms_.empty()) throw DomainError("bidegree of the zero polynomial");
    if (!is_bihomogeneous()) throw DomainError("polynomial is not bihomogeneous");
    return terms_.begin()->first.bidegree(space_);
}

MvPoly MvPoly::graded_component(int dq, int dt) const {
    MvPoly out(space_, laurent_);
    for (const auto& [m, c] : terms_)
        if (m.bidegree(space_) == std::pair{dq, dt}) out.terms_.emplace(m, c);
    return out;
}

MvPoly MvPoly::permute_points(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != space_.n) throw UsageError("permutation size does not match n");
    MvPoly out(space_, laurent_);
    for (const auto& [m, c] : terms_) {
        Monomial img(m);
        for (int i = 1; i <= space_.n; ++i) {
            img[space_.x_index(perm[i - 1] + 1)] = m[space_.x_index(i)];
            img[space_.y_index(perm[i - 1] + 1)] = m[space_.y_index(i)];
        }
        out.add_term(img, c);
    }
    return out;
}

std::string MvPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (m.has_negative() || std::any_of(m.exps().begin(), m.exps().end(), [](int e) { return e != 0; }))
            os << " * " << monomial_to_string(m, space_);
    }
    return os.str();
}

nlohmann::json MvPoly::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [m, c] : terms_)
        out.push_back({m.exps(), integer_to_json(c.get_num()), integer_to_json(c.get_den())});
    return out;
}

namespace {

Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return Integer(j.get<std::string>());
    throw UsageError("expected an integer or decimal string in polynomial JSON");
}

}  // namespace

MvPoly MvPoly::from_json(VarSpace space, const nlohmann::json& j) {
    if (!j.is_array()) throw UsageError("polynomial JSON must be an array of terms");
    MvPoly out(space, true);
    bool any_negative = false;
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 3) throw UsageError("polynomial term must be [exps, num, den]");
        Monomial m(term[0].get<std::vector<int>>());
        any_negative = any_negative || m.has_negative();
        Rational c(integer_from_json(term[1]), integer_from_json(term[2]));
        c.canonicalize();
        out.add_term(m, c);
    }
    out.laurent_ = any_negative;
    return out;
}

// ---------------------------------------------------------------------------
// Elimination

namespace {

// row - factor * pivot, both sorted by column.
SparseEchelon::Row subtract_multiple(const SparseEchelon::Row& row, const Rational& factor,
                                     const SparseEchelon::Row& pivot) {
    SparseEchelon::Row out;
    out.reserve(row.size() + pivot.size());
    auto a = row.begin();
    auto b = pivot.begin();
    while (a != row.end() || b != pivot.end()) {
        if (b == pivot.end() || (a != row.end() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == row.end() || b->first < a->first) {
            out.emplace_back(b->first, -factor * b->second);
            ++b;
        } else {
            Rational v = a->second - factor * b->second;
            if (v != 0) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    return out;
}

}  // namespace

SparseEchelon::Row SparseEchelon::reduce(Row row) const {
    while (!row.empty()) {
        auto it = rows_.find(row.front().first);
        if (it == rows_.end()) break;
        const Rational factor = row.front().second;
        row = subtract_multiple(row, factor, it->second);
    }
    return row;
}

bool SparseEchelon::insert(Row row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    const Rational lead = row.front().second;
    if (lead != 1)
        for (auto& [col, c] : row) c /= lead;
    const int col = row.front().first;
    rows_.emplace(col, std::move(row));
    return true;
}

std::vector<int> SparseEchelon::pivot_columns() const {
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& [col, row] : rows_) out.push_back(col);
    return out;
}

EchelonResult row_reduce_lex(std::span<const MvPoly> gens) {
    EchelonResult result;
    if (gens.empty()) return result;
    const VarSpace space = gens.front().space();

    std::map<Monomial, int> column;
    for (const auto& g : gens) {
        if (!(g.space() == space)) throw UsageError("row_reduce_lex: generators from different spaces");
        for (const auto& [m, c] : g.terms()) column.emplace(m, 0);
    }
    std::vector<Monomial> by_column;
    by_column.reserve(column.size());
    for (auto& [m, idx] : column) {
        idx = static_cast<int>(by_column.size());
        by_column.push_back(m);
    }

    SparseEchelon ech;
    for (const auto& g : gens) {
        SparseEchelon::Row row;
        row.reserve(g.num_terms());
        for (const auto& [m, c] : g.terms()) row.emplace_back(column.at(m), c);
        ech.insert(std::move(row));
    }

    for (const auto& [col, row] : ech.rows()) {
        MvPoly p(space, gens.front().is_laurent());
        for (const auto& [c, v] : row) p.add_term(by_column[c], v);
        result.basis.push_back(std::move(p));
        result.trailing.push_back(by_column[col]);
    }
    return result;
}

}  // namespace nhilb

#include "nhilb/localization.hpp"

#include <algorithm>
#include <sstream>

#include "nhilb/errors.hpp"
#include "nhilb/parallel.hpp"

namespace nhilb {

std::string AffineExponent::to_string() const {
    std::string out;
    auto append = [&](int coef, const std::string& sym) {
        if (coef == 0) return;
        if (!out.empty() && coef > 0) out += '+';
        if (coef == -1 && !sym.empty())
            out += '-';
        else if (coef != 1 || sym.empty())
            out += std::to_string(coef);
        out += sym;
    };
    append(per_m, "m");
    append(per_k, "k");
    append(constant, "");
    return out.empty() ? "0" : out;
}

std::string RationalTerm::to_string() const {
    std::ostringstream os;
    os << "q^" << q_exp << " t^" << t_exp << " / ((1-q)(1-t)";
    for (const auto& [a, b] : binomials) os << "(1-q^" << a << " t^" << b << ")";
    os << ")";
    return os.str();
}

SymbolicTerm symbolic_fixed_point_term(const NestedPair& p) {
    const Partition mu = p.mu();
    SymbolicTerm term;

    const auto [box_q, box_t] = cell_weight(p.box);
    int lambda_q = 0, lambda_t = 0;
    for (const auto& c : p.lambda.cells()) {
        const auto [cq, ct] = cell_weight(c);
        lambda_q += cq;
        lambda_t += ct;
    }
    term.q_exp = {lambda_q, lambda_q + box_q, 0};
    term.t_exp = {lambda_t, lambda_t + box_t, 0};

    const RowColSplit split = row_col_cells(mu, p.box);
    for (const auto& c : split.rest) {
        const auto [a, l] = arm_leg(mu, c);
        term.binomials.push_back({-a, 1 + l});
        term.binomials.push_back({1 + a, -l});
    }
    for (const auto& c : split.row) {
        const auto [a, l] = arm_leg(mu, c);
        term.binomials.push_back({-a, 1 + l});
        term.binomials.push_back({a, -l});
    }
    for (const auto& c : split.col) {
        const auto [a, l] = arm_leg(mu, c);
        term.binomials.push_back({-a, l});
        term.binomials.push_back({1 + a, -l});
    }
    for (const auto& b : term.binomials)
        if (b.a == 0 && b.b == 0) throw InternalError("fixed-point term has a (1 - 1) factor");
    std::sort(term.binomials.begin(), term.binomials.end());
    return term;
}

RationalTerm fixed_point_term(const NestedPair& p, int m, int k) {
    SymbolicTerm s = symbolic_fixed_point_term(p);
    return {s.q_exp.at(m, k), s.t_exp.at(m, k), std::move(s.binomials)};
}

void LaurentSeries::add(int i, int j, const Rational& c) {
    if (c == 0 || weight(i, j) > bound_) return;
    auto [it, inserted] = coeffs_.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
    if (other.weight_t_ != weight_t_) throw UsageError("adding Laurent series in different weight orders");
    bound_ = std::min(bound_, other.bound_);
    for (const auto& [key, c] : other.coeffs_) add(key.first, key.second, c);
    return *this;
}

void LaurentSeries::multiply_geometric(int a, int b) {
    const long w = weight(a, b);
    if (w <= 0) throw InternalError("geometric expansion needs a positive-weight ratio");
    std::map<std::pair<int, int>, Rational> out;
    for (const auto& [key, c] : coeffs_) {
        long wt = weight(key.first, key.second);
        for (int i = 0; wt <= bound_; ++i, wt += w) {
            auto [it, inserted] = out.try_emplace({key.first + i * a, key.second + i * b}, c);
            if (!inserted) it->second += c;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    coeffs_ = std::move(out);
}

LaurentSeries expand_term(const RationalTerm& term, int D, int weight_t) {
    if (D < 0) throw UsageError("expand_term: D must be >= 0");
    LaurentSeries out(weight_t, static_cast<long>(weight_t) * D);

    int qe = term.q_exp, te = term.t_exp;
    int sign = 1;
    std::vector<Binomial> ratios;
    auto absorb = [&](const Binomial& f) {
        const long w = out.weight(f.a, f.b);
        if (w == 0) throw InternalError("binomial with zero weight; W is not generic for this term");
        if (w > 0) {
            ratios.push_back(f);
        } else {
            sign = -sign;
            qe -= f.a;
            te -= f.b;
            ratios.push_back({-f.a, -f.b});
        }
    };
    for (const auto& g : RationalTerm::kGlobal) absorb(g);
    for (const auto& f : term.binomials) absorb(f);

    out.add(qe, te, sign);
    for (const auto& r : ratios) out.multiply_geometric(r.a, r.b);
    return out;
}

namespace {

QTSeries finish_sum(const LaurentSeries& total, int D) {
    QTSeries out(D);
    for (const auto& [key, c] : total.coeffs()) {
        const auto [i, j] = key;
        if (i < 0 || j < 0) {
            std::ostringstream os;
            os << "localization sum kept a Laurent term " << c.get_str() << " q^" << i << " t^" << j;
            throw ConsistencyError(os.str());
        }
        if (!is_integer(c)) {
            std::ostringstream os;
            os << "localization sum has non-integer coefficient " << c.get_str() << " at q^" << i << " t^" << j;
            throw ConsistencyError(os.str());
        }
        out.add(i, j, c);
    }
    return out;
}

}  // namespace

QTSeries chi_series_serial(int n, int m, int k, int D) {
    if (n < 0) throw UsageError("chi_series: n must be >= 0");
    const int W = generic_weight(n);
    LaurentSeries total(W, static_cast<long>(W) * D);
    for (const auto& p : nested_pairs(n)) total += expand_term(fixed_point_term(p, m, k), D, W);
    return finish_sum(total, D);
}

QTSeries chi_series(int n, int m, int k, int D) {
    if (n < 0) throw UsageError("chi_series: n must be >= 0");
    const int W = generic_weight(n);
    const std::vector<NestedPair> pairs = nested_pairs(n);
    std::vector<LaurentSeries> parts(pairs.size(), LaurentSeries(W, static_cast<long>(W) * D));

    parallel_for(pairs.size(), [&](std::size_t i) { parts[i] = expand_term(fixed_point_term(pairs[i], m, k), D, W); });

    LaurentSeries total(W, static_cast<long>(W) * D);
    for (const auto& part : parts) total += part;
    return finish_sum(total, D);
}

}  // namespace nhilb

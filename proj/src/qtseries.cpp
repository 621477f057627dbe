#include "nhilb/qtseries.hpp"

#include <algorithm>
#include <sstream>

#include "nhilb/errors.hpp"

namespace nhilb {

QTSeries::QTSeries(int truncation) : truncation_(truncation) {
    if (truncation < 0) throw UsageError("series truncation must be >= 0");
}

Rational QTSeries::coefficient(int dq, int dt) const {
    auto it = coeffs_.find({dq, dt});
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void QTSeries::add(int dq, int dt, const Rational& c) {
    if (dq < 0 || dt < 0) throw DomainError("negative exponent in a (q,t) power series");
    if (dq + dt > truncation_ || c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace({dq, dt}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

QTSeries& QTSeries::operator+=(const QTSeries& other) {
    truncation_ = std::min(truncation_, other.truncation_);
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = (it->first.first + it->first.second > truncation_) ? coeffs_.erase(it) : std::next(it);
    for (const auto& [key, c] : other.coeffs_) add(key.first, key.second, c);
    return *this;
}

QTSeries QTSeries::operator+(const QTSeries& other) const {
    QTSeries out(*this);
    out += other;
    return out;
}

QTSeries QTSeries::operator*(const QTSeries& other) const {
    QTSeries out(std::min(truncation_, other.truncation_));
    for (const auto& [ka, ca] : coeffs_)
        for (const auto& [kb, cb] : other.coeffs_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

QTSeries QTSeries::swapped() const {
    QTSeries out(truncation_);
    for (const auto& [key, c] : coeffs_) out.add(key.second, key.first, c);
    return out;
}

QTSeries QTSeries::monomial(int dq, int dt, int truncation, const Rational& c) {
    QTSeries out(truncation);
    out.add(dq, dt, c);
    return out;
}

QTSeries QTSeries::inverse_binomials(const std::vector<std::pair<int, int>>& factors, int truncation) {
    QTSeries out = monomial(0, 0, truncation);
    for (const auto& [a, b] : factors) {
        if (a < 0 || b < 0 || a + b == 0) throw DomainError("inverse_binomials needs a, b >= 0 with a + b > 0");
        QTSeries geometric(truncation);
        for (int i = 0; i * (a + b) <= truncation; ++i) geometric.add(i * a, i * b, 1);
        out = out * geometric;
    }
    return out;
}

bool QTSeries::all_nonnegative_integers() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return is_integer(kv.second) && kv.second >= 0; });
}

std::optional<CoefficientMismatch> QTSeries::first_mismatch(const QTSeries& other) const {
    const int bound = std::min(truncation_, other.truncation_);
    for (int total = 0; total <= bound; ++total)
        for (int dq = 0; dq <= total; ++dq) {
            const int dt = total - dq;
            Rational a = coefficient(dq, dt);
            Rational b = other.coefficient(dq, dt);
            if (a != b) return CoefficientMismatch{dq, dt, a, b};
        }
    return std::nullopt;
}

std::vector<std::tuple<int, int, Rational>> QTSeries::sorted_terms() const {
    std::vector<std::tuple<int, int, Rational>> out;
    out.reserve(coeffs_.size());
    for (const auto& [key, c] : coeffs_) out.emplace_back(key.first, key.second, c);
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        const int sl = std::get<0>(l) + std::get<1>(l);
        const int sr = std::get<0>(r) + std::get<1>(r);
        return sl != sr ? sl < sr : std::get<0>(l) < std::get<0>(r);
    });
    return out;
}

nlohmann::json QTSeries::coeffs_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [dq, dt, c] : sorted_terms()) out.push_back({dq, dt, rational_to_json(c)});
    return out;
}

std::string QTSeries::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [dq, dt, c] : sorted_terms()) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (dq != 0) os << "*q" << (dq != 1 ? "^" + std::to_string(dq) : "");
        if (dt != 0) os << "*t" << (dt != 1 ? "^" + std::to_string(dt) : "");
    }
    os << " + O(deg " << truncation_ + 1 << ")";
    return os.str();
}

}  // namespace nhilb

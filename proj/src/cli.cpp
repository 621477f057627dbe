#include "nhilb/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <random>
#include <sstream>

#include "nhilb/errors.hpp"
#include "nhilb/lattice.hpp"
#include "nhilb/localization.hpp"
#include "nhilb/parallel.hpp"

namespace nhilb {

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::chi, "chi"},
    {Command::hilbert, "hilbert"},
    {Command::verify, "verify"},
    {Command::trailing, "trailing"},
    {Command::decompose, "decompose"},
    {Command::body, "body"},
    {Command::sections_dim, "sections-dim"},
    {Command::cones_n2, "cones-n2"},
};

int parse_positive(std::string_view text, std::string_view what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v <= 0)
        throw UsageError("caps: " + std::string(what) + " must be a positive integer");
    return v;
}

int require_n(const RunConfig& c) {
    if (!c.n) throw UsageError("--n is required for " + std::string(command_name(c.command)));
    return *c.n;
}

std::string exps_to_string(const std::vector<int>& e) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ')';
    return os.str();
}

nlohmann::json series_json(const RunConfig& c, int n, const QTSeries& s) {
    return {{"n", n}, {"m", c.m}, {"k", c.k}, {"D", s.truncation()}, {"coeffs", s.coeffs_json()}};
}

// Coefficient grid: rows by t-degree, columns by q-degree, blank past degree D.
void series_latex(std::ostream& out, const QTSeries& s) {
    const int D = s.truncation();
    out << "\\begin{tabular}{r|" << std::string(D + 1, 'r') << "}\n";
    out << "$t \\backslash q$";
    for (int dq = 0; dq <= D; ++dq) out << " & " << dq;
    out << " \\\\\n\\hline\n";
    for (int dt = 0; dt <= D; ++dt) {
        out << dt;
        for (int dq = 0; dq <= D; ++dq) {
            out << " & ";
            if (dq + dt <= D) out << s.coefficient(dq, dt).get_str();
        }
        out << " \\\\\n";
    }
    out << "\\end{tabular}\n";
}

void emit_series(const RunConfig& c, int n, const std::string& label, const QTSeries& s, std::ostream& out) {
    switch (c.format) {
        case Format::json: out << series_json(c, n, s).dump() << '\n'; break;
        case Format::latex: series_latex(out, s); break;
        case Format::text:
            out << label << " n=" << n << " m=" << c.m << " k=" << c.k << " D=" << s.truncation() << '\n';
            out << s.to_string() << '\n';
            break;
    }
}

std::string mismatch_text(const CoefficientMismatch& mm) {
    std::ostringstream os;
    os << "(" << mm.dq << "," << mm.dt << "): " << mm.lhs.get_str() << " vs " << mm.rhs.get_str();
    return os.str();
}

nlohmann::json mismatch_json(const std::string& pair, const CoefficientMismatch& mm) {
    return {{"routes", pair},
            {"bidegree", {mm.dq, mm.dt}},
            {"lhs", rational_to_json(mm.lhs)},
            {"rhs", rational_to_json(mm.rhs)}};
}

struct PhiCheck {
    int samples = 0;
    int failures = 0;
};

// support_ok(f, j) against in_I_power(phi(f), j) for j = k, k + 1 on random
// integer combinations of blowup generators.
PhiCheck phi_spot_check(int n, int M, int k, int D, int seed, const SectionCaps& caps) {
    PhiCheck out;
    const auto gens = generators({n, M, k, D, Ambient::blowup}, caps);
    if (gens.empty()) return out;
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        MvPoly f(VarSpace::blowup(n));
        for (int i = 0; i < 3; ++i) f += gens[pick(rng)].poly.scaled(coef(rng));
        const MvPoly shifted = apply_phi(embed_nested(f));
        ++out.samples;
        for (int j = k; j <= k + 1; ++j)
            if (support_ok(f, j) != in_I_power(shifted, j)) {
                ++out.failures;
                break;
            }
    }
    return out;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const int n = require_n(c);
    if (c.D < 0) throw UsageError("--D must be >= 0");
    const QTSeries chi = chi_series(n, c.m, c.k, c.D);
    const QTSeries hil = hilbert_series(n, c.m, c.k, c.D);

    std::optional<QTSeries> sec;
    PhiCheck phi;
    std::string skipped;
    if (n < 1) {
        skipped = "n = 0";
    } else if (n > c.caps.max_n || c.m + c.k > c.caps.max_mk) {
        skipped = "outside caps";
    } else {
        const int Ds = std::min(c.D, c.caps.max_D);
        sec = graded_sections({n, c.m, c.k, Ds, Ambient::nested}, c.caps).series();
        phi = phi_spot_check(n, c.m + c.k, c.k, Ds, c.seed, c.caps);
    }

    std::optional<std::pair<std::string, CoefficientMismatch>> first;
    if (auto mm = chi.first_mismatch(hil)) first = {{"chi/hilbert", *mm}};
    if (!first && sec)
        if (auto mm = hil.first_mismatch(*sec)) first = {{"hilbert/sections", *mm}};

    if (c.format == Format::json) {
        nlohmann::json j = {{"n", n},
                            {"m", c.m},
                            {"k", c.k},
                            {"D", c.D},
                            {"chi", chi.coeffs_json()},
                            {"hilbert", hil.coeffs_json()},
                            {"agree", !first.has_value() && phi.failures == 0},
                            {"phi_check", {{"seed", c.seed}, {"samples", phi.samples}, {"failures", phi.failures}}}};
        if (sec)
            j["sections"] = {{"D", sec->truncation()}, {"coeffs", sec->coeffs_json()}};
        else
            j["sections"] = {{"skipped", skipped}};
        j["first_mismatch"] = first ? mismatch_json(first->first, first->second) : nlohmann::json(nullptr);
        out << j.dump() << '\n';
    } else if (c.format == Format::latex) {
        out << "% chi\n";
        series_latex(out, chi);
        out << "% hilbert\n";
        series_latex(out, hil);
        if (sec) {
            out << "% sections\n";
            series_latex(out, *sec);
        }
    } else {
        out << "verify n=" << n << " m=" << c.m << " k=" << c.k << " D=" << c.D << '\n';
        out << "chi:      " << chi.to_string() << '\n';
        out << "hilbert:  " << hil.to_string() << '\n';
        if (sec)
            out << "sections: " << sec->to_string() << '\n';
        else
            out << "sections: skipped (" << skipped << ")\n";
        if (phi.samples > 0)
            out << "phi check (seed " << c.seed << "): " << phi.samples - phi.failures << "/" << phi.samples
                << " combinations agree\n";
        if (first)
            out << "first mismatch " << first->first << " at " << mismatch_text(first->second) << '\n';
        out << (first || phi.failures ? "result: MISMATCH" : "result: all routes agree") << '\n';
    }
    return first || phi.failures ? 1 : 0;
}

int cmd_trailing(const RunConfig& c, std::ostream& out) {
    const int n = require_n(c);
    const SectionSpaceSpec spec{n, c.m, c.k, c.D, c.ambient};
    const auto computed = trailing_set(spec, c.caps);

    std::set<std::vector<int>> expected;
    if (c.ambient == Ambient::blowup) {
        for (const auto& p : enumerate_P(n, c.m, c.k, c.D)) expected.insert(p.exponents());
    } else {
        for (const auto& p : enumerate_P(n, c.m + c.k, c.k, c.D))
            for (int a = 0; a + p.degree() <= c.D; ++a)
                for (int b = 0; a + b + p.degree() <= c.D; ++b) {
                    std::vector<int> e = {a, b};
                    const auto tail = p.exponents();
                    e.insert(e.end(), tail.begin(), tail.end());
                    expected.insert(std::move(e));
                }
    }

    std::vector<std::vector<int>> missing, extra;
    std::set_difference(expected.begin(), expected.end(), computed.begin(), computed.end(),
                        std::back_inserter(missing));
    std::set_difference(computed.begin(), computed.end(), expected.begin(), expected.end(),
                        std::back_inserter(extra));
    const bool equal = missing.empty() && extra.empty();

    if (c.format == Format::json) {
        out << nlohmann::json{{"n", n},
                              {"m", c.m},
                              {"k", c.k},
                              {"D", c.D},
                              {"ambient", c.ambient == Ambient::nested ? "nested" : "blowup"},
                              {"computed", computed.size()},
                              {"lattice", expected.size()},
                              {"missing", missing},
                              {"extra", extra},
                              {"equal", equal}}
                   .dump()
            << '\n';
    } else {
        out << "trailing n=" << n << " m=" << c.m << " k=" << c.k << " D=" << c.D
            << (c.ambient == Ambient::nested ? " nested" : " blowup") << '\n';
        out << "sections: " << computed.size() << " exponents, lattice: " << expected.size() << " points\n";
        for (const auto& e : missing) out << "missing " << exps_to_string(e) << '\n';
        for (const auto& e : extra) out << "extra " << exps_to_string(e) << '\n';
        out << (equal ? "sets are equal" : "sets differ") << '\n';
    }
    return equal ? 0 : 1;
}

int cmd_decompose(const RunConfig& c, std::ostream& out) {
    if (c.points.empty()) throw UsageError("decompose needs --points");
    const PointSet s = PointSet::parse(c.points);
    if (c.n && static_cast<std::size_t>(*c.n) != s.size())
        throw UsageError("--n does not match the number of points");
    if (!s.is_lex_sorted()) throw UsageError("points must be listed in lexicographic order");
    if (c.m < 1) throw UsageError("decompose needs --m >= 1");

    const auto parts = sum_decompose(s, c.m);
    std::optional<LiftDecomposition> lifts;
    if (parts && c.k >= 0) lifts = lift_decompose(*parts, c.k);

    if (c.format == Format::json) {
        nlohmann::json j = {{"points", s.to_json()}, {"m", c.m}, {"k", c.k}};
        if (parts) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& p : *parts) arr.push_back(p.to_json());
            j["decomposition"] = arr;
            j["lifts"] = lifts->ks;
            j["lift_history"] = lifts->history;
        } else {
            j["decomposition"] = nullptr;
        }
        out << j.dump() << '\n';
    } else {
        out << "S = " << s.to_string() << '\n';
        if (!parts) {
            out << "no decomposition into " << c.m << " strictly increasing point sets\n";
        } else {
            for (std::size_t i = 0; i < parts->size(); ++i) out << "S" << i + 1 << " = " << (*parts)[i].to_string() << '\n';
            out << "lifts for k=" << c.k << ":";
            for (int v : lifts->ks) out << ' ' << v;
            out << '\n';
        }
    }
    return 0;
}

int cmd_body(const RunConfig& c, std::ostream& out) {
    const int n = require_n(c);
    const int M = c.m + c.k;
    const auto hs = okounkov_halfspaces(n, M, c.k);
    auto var = [n](int i) {
        return i < n ? "a_" + std::to_string(i + 1) : "b_" + std::to_string(i - n + 1);
    };
    auto lhs = [&](const Halfspace& h) {
        std::string s;
        for (std::size_t i = 0; i < h.normal.size(); ++i) {
            const int v = h.normal[i];
            if (v == 0) continue;
            if (!s.empty()) s += v > 0 ? " + " : " - ";
            else if (v < 0) s += "-";
            if (std::abs(v) != 1) s += std::to_string(std::abs(v)) + " ";
            s += var(static_cast<int>(i));
        }
        return s;
    };

    if (c.format == Format::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& h : hs) arr.push_back(h.to_json());
        out << nlohmann::json{{"n", n}, {"m", c.m}, {"k", c.k}, {"M", M}, {"halfspaces", arr}}.dump() << '\n';
    } else if (c.format == Format::latex) {
        out << "\\begin{tabular}{l}\n";
        for (const auto& h : hs) out << "$" << lhs(h) << " \\geq " << h.offset << "$ \\\\\n";
        out << "\\end{tabular}\n";
    } else {
        out << "body n=" << n << " m=" << c.m << " k=" << c.k << ": R^2_{>=0} x Delta(" << M << "," << c.k << ")\n";
        for (const auto& h : hs) out << lhs(h) << " >= " << h.offset << '\n';
    }
    return 0;
}

int cmd_sections_dim(const RunConfig& c, std::ostream& out) {
    const int n = require_n(c);
    const GradedSections gs = graded_sections({n, c.m, c.k, c.D, c.ambient}, c.caps);
    if (c.format == Format::json) {
        out << gs.to_json().dump() << '\n';
    } else if (c.format == Format::latex) {
        series_latex(out, gs.series());
    } else {
        out << "sections-dim n=" << n << " m=" << c.m << " k=" << c.k << " D=" << c.D
            << (c.ambient == Ambient::nested ? " nested" : " blowup") << '\n';
        for (const auto& p : gs.pieces)
            if (p.dim() > 0) out << "(" << p.dq << "," << p.dt << ") " << p.dim() << '\n';
    }
    return 0;
}

int cmd_cones(const RunConfig& c, std::ostream& out) {
    const int D = c.D;
    const auto cones = printed_cones_n2();
    QTSeries total(D);
    std::vector<PointSet> pts;
    bool ok = true;
    nlohmann::json arr = nlohmann::json::array();
    std::ostringstream text;
    for (const auto& cone : cones) {
        const QTSeries derived = cone_series(cone, D);
        const bool match = !derived.first_mismatch(cone_printed_series(cone, D));
        ok = ok && match;
        total += derived;
        const auto cp = cone_points(cone, D);
        pts.insert(pts.end(), cp.begin(), cp.end());

        std::ostringstream form;
        form << "q^" << cone.printed_q << " t^" << cone.printed_t << " /";
        for (const auto& [a, b] : cone.printed_denominator) form << " (1-q^" << a << " t^" << b << ")";
        arr.push_back({{"label", cone.label},
                       {"vertex", cone.vertex},
                       {"rays", cone.rays},
                       {"printed", form.str()},
                       {"matches_printed", match},
                       {"points", cp.size()}});
        text << "(" << cone.label << ") vertex " << exps_to_string(cone.vertex) << ", " << cone.rays.size()
             << " rays, " << form.str() << ": " << (match ? "matches" : "MISMATCH") << '\n';
    }

    std::sort(pts.begin(), pts.end());
    const bool disjoint = std::adjacent_find(pts.begin(), pts.end()) == pts.end();
    const auto lattice = enumerate_P(2, 2, 1, D);
    std::vector<PointSet> sorted_lattice(lattice.begin(), lattice.end());
    std::sort(sorted_lattice.begin(), sorted_lattice.end());
    const bool partition = disjoint && pts == sorted_lattice;
    const bool sum_ok = !total.first_mismatch(lattice_sum(2, 2, 1, D));
    ok = ok && partition && sum_ok;

    if (c.format == Format::json) {
        out << nlohmann::json{{"D", D}, {"cones", arr}, {"partition", partition}, {"sum_matches_lattice", sum_ok}}.dump()
            << '\n';
    } else {
        out << "cones-n2 D=" << D << '\n' << text.str();
        out << "cones partition P(2,1) through degree " << D << ": " << (partition ? "yes" : "no") << '\n';
        out << "cone sum equals lattice sum: " << (sum_ok ? "yes" : "no") << '\n';
    }
    return ok ? 0 : 1;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [c, s] : kCommands)
        if (s == name) return c;
    return std::nullopt;
}

std::string_view command_name(Command c) {
    for (const auto& [cmd, s] : kCommands)
        if (cmd == c) return s;
    return "?";
}

std::optional<Format> parse_format(std::string_view name) {
    if (name == "text") return Format::text;
    if (name == "json") return Format::json;
    if (name == "latex") return Format::latex;
    return std::nullopt;
}

std::optional<Ambient> parse_ambient(std::string_view name) {
    if (name == "blowup") return Ambient::blowup;
    if (name == "nested") return Ambient::nested;
    return std::nullopt;
}

SectionCaps parse_caps(std::string_view text) {
    SectionCaps caps;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw UsageError("caps: expected key=value, got '" + std::string(item) + "'");
        const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
        if (key == "n")
            caps.max_n = parse_positive(value, key);
        else if (key == "mk")
            caps.max_mk = parse_positive(value, key);
        else if (key == "D")
            caps.max_D = parse_positive(value, key);
        else
            throw UsageError("caps: unknown key '" + std::string(key) + "'");
    }
    return caps;
}

int resolve_threads(std::optional<int> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("NESTED_HILB_THREADS")) {
        int v = 0;
        const std::string_view s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size()) return v;
    }
    return 0;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.D < 0) throw UsageError("--D must be >= 0");
        set_thread_count(config.threads);
        switch (config.command) {
            case Command::chi: {
                const int n = require_n(config);
                emit_series(config, n, "chi", chi_series(n, config.m, config.k, config.D), out);
                return 0;
            }
            case Command::hilbert: {
                const int n = require_n(config);
                emit_series(config, n, "hilbert", hilbert_series(n, config.m, config.k, config.D), out);
                return 0;
            }
            case Command::verify: return cmd_verify(config, out);
            case Command::trailing: return cmd_trailing(config, out);
            case Command::decompose: return cmd_decompose(config, out);
            case Command::body: return cmd_body(config, out);
            case Command::sections_dim: return cmd_sections_dim(config, out);
            case Command::cones_n2: return cmd_cones(config, out);
        }
        throw UsageError("unknown command");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ConsistencyError& e) {
        err << "consistency failure: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace nhilb

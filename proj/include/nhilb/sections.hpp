#pragma once

// Explicit section spaces as spans of polynomials.
//
//  * blowup ambient, parameters (m, k): A^m_{>=k}, the elements of A^m (span of
//    m-fold products of antisymmetric polynomials; symmetric polynomials when
//    m = 0) whose every term has a_i + b_i >= k for each point i;
//  * nested ambient, parameters (m, k): H^0(O(m,k)) on Hilb^{n,n+1}, realized
//    as phi(A^{m+k}_{>=k}[x,y]) = A^{m+k}[x,y] cap I^k, where phi shifts
//    x_i -> x_i - x, y_i -> y_i - y.
//
// Blowup generators are products of determinants of lifted point sets,
// Delta_{l_{k_1}(S_1)} ... Delta_{l_{k_m}(S_m)} with k_1 + ... + k_m = k.

#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nhilb/lattice.hpp"
#include "nhilb/mvpoly.hpp"
#include "nhilb/qtseries.hpp"

namespace nhilb {

enum class Ambient { blowup, nested };

struct SectionCaps {
    int max_n = 4;
    int max_mk = 4;  // largest A-exponent (m for blowup, m + k for nested)
    int max_D = 8;
};

struct SectionSpaceSpec {
    int n = 1;
    int m = 0;
    int k = 0;
    int D = 0;
    Ambient ambient = Ambient::blowup;

    // Exponent of A in the construction.
    int a_exponent() const { return ambient == Ambient::nested ? m + k : m; }
    VarSpace space() const { return ambient == Ambient::nested ? VarSpace::nested(n) : VarSpace::blowup(n); }
    void validate(const SectionCaps& caps = {}) const;
};

struct GeneratorFactor {
    PointSet set;  // unlifted, lex-sorted
    int lift = 0;

    PointSet lifted() const { return k_lift(set, lift); }
};

struct GeneratorRecord {
    std::vector<GeneratorFactor> factors;  // empty for m = 0 (symmetric monomials)
    std::pair<int, int> xy_power{0, 0};    // nested ambient only
    MvPoly poly;
    Monomial trailing;
};

// det(x_i^{a_j} y_i^{b_j}) with the points labeled in lex order. Repeated
// points make the determinant vanish and raise DomainError.
MvPoly delta_poly(const PointSet& s);
// Orbit sum of x_1^{a_1} y_1^{b_1} ... under S_n; each distinct monomial once.
MvPoly sym_monomial(const PointSet& s);

std::vector<GeneratorRecord> generators(const SectionSpaceSpec& spec, const SectionCaps& caps = {});
std::vector<MvPoly> nested_generators(int n, int m, int k, int D, const SectionCaps& caps = {});

bool support_ok(const MvPoly& f, int k);

struct HalfPlane {
    int alpha = 0;
    int beta = 0;
    int c = 0;  // alpha * a + beta * b >= c
};
bool polygon_support_ok(const MvPoly& f, std::span<const HalfPlane> halfplanes);

// Blowup polynomial viewed in the nested ring (x, y exponents zero).
MvPoly embed_nested(const MvPoly& f);
MvPoly apply_phi(const MvPoly& f);
MvPoly apply_phi_inv(const MvPoly& f);
bool in_I_power(const MvPoly& f, int k);

struct GradedPiece {
    int dq = 0;
    int dt = 0;
    EchelonResult echelon;

    int dim() const { return static_cast<int>(echelon.basis.size()); }
};

struct GradedSections {
    SectionSpaceSpec spec;
    std::vector<GradedPiece> pieces;  // every bidegree with dq + dt <= D, sorted by (dq+dt, dq)

    const GradedPiece& piece(int dq, int dt) const;
    QTSeries series() const;
    std::set<std::vector<int>> trailing_set() const;
    nlohmann::json to_json() const;
};

GradedSections graded_sections(const SectionSpaceSpec& spec, const SectionCaps& caps = {});
GradedSections graded_sections_serial(const SectionSpaceSpec& spec, const SectionCaps& caps = {});

std::set<std::vector<int>> trailing_set(const SectionSpaceSpec& spec, const SectionCaps& caps = {});
int graded_dim(const SectionSpaceSpec& spec, int dq, int dt, const SectionCaps& caps = {});

// Products of m elements from the degree-one pieces A^1_{>=k_i} (k_1 + ... +
// k_m = k) against an independent computation of A^m_{>=k}: the subspace of
// span{Delta_{S_1} ... Delta_{S_m}} whose terms all satisfy the support
// condition. Compared in the blowup ring; x, y are free and phi is an
// isomorphism, so equal ranks there mean equal ranks on Hilb^{n,n+1}.
struct SurjectivityEntry {
    int dq = 0;
    int dt = 0;
    int product_rank = 0;
    int full_dim = 0;
};
struct SurjectivityReport {
    std::vector<SurjectivityEntry> entries;
    bool ok() const;
    nlohmann::json to_json() const;
};
SurjectivityReport check_surjectivity(int n, int m, int k, int D, const SectionCaps& caps = {});

// dim of {f in A^m : every term satisfies a_i + b_i >= k} at one bidegree,
// computed from unrestricted determinant products.
int support_subspace_dim(int n, int m, int k, int dq, int dt);

}  // namespace nhilb

#ifndef PBSAT_SOLVER_HPP
#define PBSAT_SOLVER_HPP

#include "pbsat/formula.hpp"
#include "pbsat/pba.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace pbsat {

// ---- classical SAT ------------------------------------------------------

// DPLL with unit propagation on clausal input.  Branching is deterministic:
// lowest-index unassigned variable (variables numbered by first occurrence),
// trying 1 first.  Variables mentioned nowhere relevant default to 0.
std::optional<std::map<std::string, bool>> sat_classical(const std::vector<Clause>& clauses);
std::optional<std::map<std::string, bool>> sat_classical(const FormulaPtr& cnf);

// ---- VARSAT -------------------------------------------------------------

enum class SearchStatus { Found, No, BudgetExceeded };

struct VarsatOutcome {
    SearchStatus status = SearchStatus::No;
    std::map<std::string, int> assignment;  // variable -> element index
    long long nodes = 0;
};

inline constexpr long long kDefaultBudget = 1'000'000'000LL;

// Backtracking search for alpha with phi^A(alpha) = target.  Variables are
// ordered by descending occurrence count (ties by first post-order
// appearance); elements are tried in index order.  Partial assignments whose
// already-forced binary subformulas violate commeasurability are pruned.
// Each attempted partial assignment costs one budget node.
VarsatOutcome varsat(const FinitePBA& a, int target, const FormulaPtr& f,
                     long long budget = kDefaultBudget);
// Weak variant: accept any value different from 0.
VarsatOutcome varsat_weak(const FinitePBA& a, const FormulaPtr& f,
                          long long budget = kDefaultBudget);

// ---- non-triviality certificates ----------------------------------------

// Height-1 equation over certificate vertices.
struct CertEq {
    enum class Shape { Join, Meet, Neg, One, Zero, Same };
    Shape shape;
    int x = -1, y = -1, z = -1;  // x = y|z, x = y&z, x = ~y, x = 1, x = 0, x = y
    bool operator==(const CertEq&) const = default;
    bool operator<(const CertEq& o) const {
        return std::tie(shape, x, y, z) < std::tie(o.shape, o.x, o.y, o.z);
    }
};

// Separator for a claimed non-inequality a <= b within one clique.
struct CertSep {
    int a = -1, b = -1;
    std::vector<char> nu;  // indexed parallel to the clique's member list
};

struct CertClique {
    std::vector<int> members;  // vertex ids, ascending
    std::vector<CertEq> eqs;
    std::vector<CertSep> seps;
};

// The Lemma-ntriv polynomial witness bundle: a claimed commeasurability
// graph on tagged subformula values, a clique-edge cover with per-clique
// height-1 equation sets, claimed <=-facts, and separator functions.
struct NonTrivCert {
    std::vector<std::string> vertex_names;
    std::vector<std::vector<int>> tags;        // vertex -> tagged subformula indices
    std::vector<std::pair<int, int>> edges;    // claimed commeasurability
    std::vector<std::pair<int, int>> rel;      // claimed a <= b
    std::vector<CertClique> cliques;

    int vertex_count() const { return static_cast<int>(vertex_names.size()); }
};

// Verifier for the certificate conditions: subformula tagging with a root
// tag; per-connective edges and equations present in a covering clique;
// root equation `= 1`; all structural invariants; every separator respects
// its clique's equations.  Two deliberate strengthenings keep the check
// sound: a connective equation must appear in every cover clique containing
// all of its vertices, and every cover clique must admit at least one
// {0,1}-valuation respecting its equation set (witnessed by a separator or
// found by search).  On failure, *why (if non-null) explains.
bool cert_verify(const NonTrivCert& cert, const FormulaPtr& f, std::string* why = nullptr);

// Certificate serialization (see README for the format).
std::string print_cert(const NonTrivCert& cert);
NonTrivCert parse_cert(const std::string& text);

// ---- cert_from_witness --------------------------------------------------

namespace detail {

// Closure of a commuting family under ~ and /\ (a finite Boolean algebra).
template <PbaBackend B>
std::vector<typename B::Element> boolean_closure(const B& a,
                                                 std::vector<typename B::Element> gen) {
    auto contains = [&](const std::vector<typename B::Element>& v,
                        const typename B::Element& x) {
        for (const auto& e : v)
            if (a.equal(e, x)) return true;
        return false;
    };
    std::vector<typename B::Element> out;
    for (const auto& g : gen)
        if (!contains(out, g)) out.push_back(g);
    if (!contains(out, a.zero())) out.push_back(a.zero());
    if (!contains(out, a.one())) out.push_back(a.one());
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < out.size(); ++i) {
            auto n = a.neg(out[i]);
            if (!contains(out, n)) {
                out.push_back(n);
                grew = true;
            }
            for (size_t j = 0; j <= i; ++j) {
                auto m = a.meet(out[i], out[j]);
                if (!contains(out, m)) {
                    out.push_back(m);
                    grew = true;
                }
            }
        }
        if (out.size() > 4096)
            throw std::runtime_error("boolean_closure: generated algebra too large");
    }
    return out;
}

// Atoms (minimal non-zero elements) of a finite Boolean algebra given as an
// element list closed under the operations.
template <PbaBackend B>
std::vector<typename B::Element> boolean_atoms(const B& a,
                                               const std::vector<typename B::Element>& alg) {
    std::vector<typename B::Element> atoms;
    for (const auto& e : alg) {
        if (a.equal(e, a.zero())) continue;
        bool minimal = true;
        for (const auto& f : alg) {
            if (a.equal(f, a.zero()) || a.equal(f, e)) continue;
            if (pba_leq(a, f, e)) {
                minimal = false;
                break;
            }
        }
        if (minimal) atoms.push_back(e);
    }
    return atoms;
}

}  // namespace detail

// Builds the partial-view certificate from a strong witness:
// vertices are the distinct values of Sub(phi) under alpha plus 0 and 1;
// cliques are the per-connective triples (plus a root clique) closed under
// mutual commeasurability within the vertex set; Eq(C) collects every
// height-1 equation that holds among C's members; <=-claims come from the
// algebra order; separators are read off the atoms of each clique's
// generated Boolean subalgebra.  Claimed edges are exactly the pairs
// covered by cliques.  Throws when alpha is not a strong witness or the
// algebra is trivial.
template <PbaBackend B>
NonTrivCert cert_from_witness(const B& a,
                              const std::map<std::string, typename B::Element>& alpha,
                              const FormulaPtr& f) {
    using Element = typename B::Element;
    if (a.equal(a.zero(), a.one()))
        throw std::runtime_error("WitnessInvalid: algebra is trivial");

    auto subs = subformulas(f);
    std::vector<Element> value(subs.size());
    std::map<std::string, int> sub_index;
    for (size_t i = 0; i < subs.size(); ++i) sub_index[print_formula(subs[i])] = static_cast<int>(i);
    auto child = [&](const FormulaPtr& g) { return sub_index.at(print_formula(g)); };

    for (size_t i = 0; i < subs.size(); ++i) {
        const auto& s = subs[i];
        switch (s->kind) {
            case Kind::Top: value[i] = a.one(); break;
            case Kind::Var: {
                auto it = alpha.find(s->name);
                if (it == alpha.end())
                    throw std::runtime_error("WitnessInvalid: unassigned variable '" + s->name + "'");
                value[i] = it->second;
                break;
            }
            case Kind::Not: value[i] = a.neg(value[child(s->lhs)]); break;
            case Kind::Or:
            case Kind::And: {
                const Element& l = value[child(s->lhs)];
                const Element& r = value[child(s->rhs)];
                if (!a.comm(l, r))
                    throw std::runtime_error("WitnessInvalid: substitution not meaningful");
                value[i] = s->kind == Kind::Or ? a.join(l, r) : a.meet(l, r);
                break;
            }
        }
    }
    if (!a.equal(value.back(), a.one()))
        throw std::runtime_error("WitnessInvalid: formula does not evaluate to 1");

    // Distinct values -> vertices; 0 and 1 are always present.
    std::vector<Element> vert;
    auto vertex_of = [&](const Element& x) {
        for (size_t i = 0; i < vert.size(); ++i)
            if (a.equal(vert[i], x)) return static_cast<int>(i);
        vert.push_back(x);
        return static_cast<int>(vert.size()) - 1;
    };
    int vzero = vertex_of(a.zero());
    int vone = vertex_of(a.one());
    NonTrivCert cert;
    std::vector<int> tag(subs.size());
    for (size_t i = 0; i < subs.size(); ++i) tag[i] = vertex_of(value[i]);

    int n = static_cast<int>(vert.size());
    cert.vertex_names.resize(n);
    cert.tags.resize(n);
    cert.vertex_names[vzero] = "zero";
    cert.vertex_names[vone] = "one";
    for (int v = 0; v < n; ++v)
        if (cert.vertex_names[v].empty()) cert.vertex_names[v] = "n" + std::to_string(v);
    for (size_t i = 0; i < subs.size(); ++i) cert.tags[tag[i]].push_back(static_cast<int>(i));

    // <=-claims over commeasurable vertex pairs.
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (a.comm(vert[u], vert[v]) && a.equal(a.meet(vert[u], vert[v]), vert[u]))
                cert.rel.emplace_back(u, v);
    auto claimed = [&](int u, int v) {
        return std::find(cert.rel.begin(), cert.rel.end(), std::make_pair(u, v)) != cert.rel.end();
    };

    // Cover cliques: per-connective triples plus the root, closed under
    // mutual commeasurability (0 and 1 join every closure).
    std::vector<std::vector<int>> raw;
    raw.push_back({tag[subs.size() - 1]});
    for (size_t i = 0; i < subs.size(); ++i) {
        const auto& s = subs[i];
        if (s->kind == Kind::Not)
            raw.push_back({tag[i], tag[child(s->lhs)]});
        else if (s->kind == Kind::Or || s->kind == Kind::And)
            raw.push_back({tag[i], tag[child(s->lhs)], tag[child(s->rhs)]});
    }
    std::vector<std::vector<int>> cliques;
    for (auto seed : raw) {
        std::sort(seed.begin(), seed.end());
        seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
        bool grew = true;
        while (grew) {
            grew = false;
            for (int v = 0; v < n; ++v) {
                if (std::find(seed.begin(), seed.end(), v) != seed.end()) continue;
                bool all = true;
                for (int m : seed)
                    if (!a.comm(vert[v], vert[m])) {
                        all = false;
                        break;
                    }
                if (all) {
                    seed.insert(std::lower_bound(seed.begin(), seed.end(), v), v);
                    grew = true;
                }
            }
        }
        if (std::find(cliques.begin(), cliques.end(), seed) == cliques.end())
            cliques.push_back(std::move(seed));
    }

    std::vector<std::pair<int, int>> edge_set;
    for (const auto& c : cliques) {
        CertClique cc;
        cc.members = c;
        // Eq(C): every height-1 equation among members that holds in A.
        for (size_t xi = 0; xi < c.size(); ++xi) {
            int x = c[xi];
            if (a.equal(vert[x], a.one())) cc.eqs.push_back({CertEq::Shape::One, x});
            if (a.equal(vert[x], a.zero())) cc.eqs.push_back({CertEq::Shape::Zero, x});
            for (size_t yi = 0; yi < c.size(); ++yi) {
                int y = c[yi];
                if (x != y && a.equal(vert[x], vert[y]))
                    cc.eqs.push_back({CertEq::Shape::Same, x, y});
                if (a.equal(vert[x], a.neg(vert[y])))
                    cc.eqs.push_back({CertEq::Shape::Neg, x, y});
                for (size_t zi = yi; zi < c.size(); ++zi) {
                    int z = c[zi];
                    if (a.equal(vert[x], a.join(vert[y], vert[z])))
                        cc.eqs.push_back({CertEq::Shape::Join, x, y, z});
                    if (a.equal(vert[x], a.meet(vert[y], vert[z])))
                        cc.eqs.push_back({CertEq::Shape::Meet, x, y, z});
                }
            }
        }
        std::sort(cc.eqs.begin(), cc.eqs.end());
        cc.eqs.erase(std::unique(cc.eqs.begin(), cc.eqs.end()), cc.eqs.end());

        // Separators from atoms of the generated Boolean subalgebra.
        std::vector<Element> gens;
        gens.reserve(c.size());
        for (int m : c) gens.push_back(vert[m]);
        auto alg = detail::boolean_closure(a, gens);
        auto atoms = detail::boolean_atoms(a, alg);
        for (int u : c)
            for (int v : c) {
                if (u == v || claimed(u, v)) continue;
                CertSep sep;
                sep.a = u;
                sep.b = v;
                bool found = false;
                for (const auto& z : atoms) {
                    if (pba_leq(a, z, vert[u]) && !pba_leq(a, z, vert[v])) {
                        sep.nu.resize(c.size());
                        for (size_t mi = 0; mi < c.size(); ++mi)
                            sep.nu[mi] = pba_leq(a, z, vert[c[mi]]) ? 1 : 0;
                        found = true;
                        break;
                    }
                }
                if (!found)
                    throw std::runtime_error("cert_from_witness: no separating atom found");
                cc.seps.push_back(std::move(sep));
            }

        for (size_t i2 = 0; i2 < c.size(); ++i2)
            for (size_t j2 = i2 + 1; j2 < c.size(); ++j2) {
                auto e = std::make_pair(c[i2], c[j2]);
                if (std::find(edge_set.begin(), edge_set.end(), e) == edge_set.end())
                    edge_set.push_back(e);
            }
        cert.cliques.push_back(std::move(cc));
    }
    std::sort(edge_set.begin(), edge_set.end());
    cert.edges = std::move(edge_set);
    return cert;
}

// ---- All-SAT ------------------------------------------------------------

struct AllsatOutcome {
    SearchStatus status = SearchStatus::No;
    std::optional<NonTrivCert> cert;  // set when status == Found
};

// Decides membership in SAT(All).  Classically satisfiable formulas
// short-circuit through sat_classical + cert_from_witness over 2; otherwise
// the minimal-obligation certificate on Sub(phi) is constructed directly:
// its per-connective cliques must each admit a {0,1}-valuation respecting
// the equations forced inside them, which is necessary (any witnessing
// algebra provides one) and sufficient (it yields claims and separators
// passing the lemma's conditions).  The valuation enumeration is budgeted.
AllsatOutcome allsat(const FormulaPtr& f, long long budget = kDefaultBudget);

}  // namespace pbsat

#endif  // PBSAT_SOLVER_HPP

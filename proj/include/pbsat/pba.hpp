#ifndef PBSAT_PBA_HPP
#define PBSAT_PBA_HPP

#include "pbsat/formula.hpp"

#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbsat {

// A backend is an operation bundle for a partial Boolean algebra: constants
// 0 and 1, the commeasurability test, total negation, join/meet on
// commeasurable pairs, and element equality.  Finite algebras implement it
// with indices, the projector/involution backends with matrices.
template <typename B>
concept PbaBackend = requires(const B& a, const typename B::Element& x,
                              const typename B::Element& y) {
    { a.zero() } -> std::convertible_to<typename B::Element>;
    { a.one() } -> std::convertible_to<typename B::Element>;
    { a.comm(x, y) } -> std::convertible_to<bool>;
    { a.neg(x) } -> std::convertible_to<typename B::Element>;
    { a.join(x, y) } -> std::convertible_to<typename B::Element>;
    { a.meet(x, y) } -> std::convertible_to<typename B::Element>;
    { a.equal(x, y) } -> std::convertible_to<bool>;
};

// ---- finite pBAs --------------------------------------------------------

class FinitePBA {
public:
    using Element = int;

    int add_element(const std::string& name);
    void set_zero(int z) { zero_ = z; }
    void set_one(int o) { one_ = o; }
    void set_comm(int a, int b);
    void set_neg(int a, int b);
    void set_join(int a, int b, int c);
    void set_meet(int a, int b, int c);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    int index_of(const std::string& name) const;  // -1 if absent
    bool trivial() const { return zero_ == one_; }

    // Backend interface.
    Element zero() const { return zero_; }
    Element one() const { return one_; }
    bool comm(Element a, Element b) const { return comm_[a][b] != 0; }
    Element neg(Element a) const;
    Element join(Element a, Element b) const;  // throws when undefined
    Element meet(Element a, Element b) const;
    bool equal(Element a, Element b) const { return a == b; }

    bool join_defined(Element a, Element b) const { return join_[a][b] >= 0; }
    bool meet_defined(Element a, Element b) const { return meet_[a][b] >= 0; }
    bool neg_defined(Element a) const { return neg_[a] >= 0; }

private:
    std::vector<std::string> names_;
    int zero_ = -1, one_ = -1;
    std::vector<std::vector<char>> comm_;
    std::vector<int> neg_;
    std::vector<std::vector<int>> join_, meet_;
};

static_assert(PbaBackend<FinitePBA>);

// ---- validation ---------------------------------------------------------

enum class PbaErrorKind {
    Structure,                // missing 0/1, bad negation, ...
    NotReflexive,
    NotSymmetric,
    OperationOutsideDomain,   // op defined off a comm pair, missing on one,
                              // or landing outside the algebra
    ExtViolated,              // some maximal comm-clique is not a Boolean algebra
};

struct PbaError {
    PbaErrorKind kind;
    std::string message;
};

// Checks the partial-Boolean-algebra laws.  Condition (Ext) is checked on the
// subset-maximal commeasurability cliques: each must contain 0 and 1, be
// closed under the operations, and satisfy the Boolean-algebra axioms
// (idempotence, commutativity, associativity, absorption, distributivity,
// identities, complements) by enumeration.  An empty result means valid.
std::vector<PbaError> validate_pba(const FinitePBA& a);

// h maps element indices of a to element indices of b.  A homomorphism
// preserves 0, 1, commeasurability, negation, and join/meet on
// commeasurable pairs.  On failure, *why (if non-null) gets a reason.
bool is_homomorphism(const FinitePBA& a, const FinitePBA& b,
                     const std::vector<int>& h, std::string* why = nullptr);

// ---- standard algebras --------------------------------------------------

FinitePBA pba_two();                 // {0,1}
FinitePBA pba_powerset(int n);       // powerset of {1..n}; elements "s<mask>"
FinitePBA pba_glued(int blocks);     // `blocks` four-element blocks glued at 0,1
// Dispatcher for the names "2", "four", "glued6" ("glued<2k+2>"),
// "powerset<n>".  Throws on unknown names.
FinitePBA standard_algebra(const std::string& name);

// ---- meaningful substitution --------------------------------------------

template <PbaBackend B>
struct EvalOutcome {
    std::optional<typename B::Element> value;
    // When undefined: the first (post-order) binary subformula whose operand
    // values fail commeasurability.
    FormulaPtr offending;
};

template <PbaBackend B>
EvalOutcome<B> meaningful_eval(const FormulaPtr& f,
                               const std::map<std::string, typename B::Element>& alpha,
                               const B& a) {
    using Out = EvalOutcome<B>;
    switch (f->kind) {
        case Kind::Top: return Out{a.one(), nullptr};
        case Kind::Var: {
            auto it = alpha.find(f->name);
            if (it == alpha.end())
                throw std::runtime_error("meaningful_eval: unassigned variable '" + f->name + "'");
            return Out{it->second, nullptr};
        }
        case Kind::Not: {
            Out l = meaningful_eval(f->lhs, alpha, a);
            if (!l.value) return l;
            return Out{a.neg(*l.value), nullptr};
        }
        case Kind::Or:
        case Kind::And: {
            Out l = meaningful_eval(f->lhs, alpha, a);
            if (!l.value) return l;
            Out r = meaningful_eval(f->rhs, alpha, a);
            if (!r.value) return r;
            if (!a.comm(*l.value, *r.value)) return Out{std::nullopt, f};
            return Out{f->kind == Kind::Or ? a.join(*l.value, *r.value)
                                           : a.meet(*l.value, *r.value),
                       nullptr};
        }
    }
    throw std::logic_error("unreachable");
}

template <PbaBackend B>
bool strongly_satisfies(const FormulaPtr& f,
                        const std::map<std::string, typename B::Element>& alpha, const B& a) {
    auto r = meaningful_eval(f, alpha, a);
    return r.value && a.equal(*r.value, a.one());
}

template <PbaBackend B>
bool weakly_satisfies(const FormulaPtr& f,
                      const std::map<std::string, typename B::Element>& alpha, const B& a) {
    auto r = meaningful_eval(f, alpha, a);
    return r.value && !a.equal(*r.value, a.zero());
}

// The algebra order: x <= y iff x and y are commeasurable and x /\ y = x.
template <PbaBackend B>
bool pba_leq(const B& a, const typename B::Element& x, const typename B::Element& y) {
    return a.comm(x, y) && a.equal(a.meet(x, y), x);
}

// Tabulates a backend restricted to a finite pool of elements as a FinitePBA.
// The pool must contain 0 and 1 and be closed under negation and under
// join/meet of commeasurable pairs; otherwise this throws.
template <PbaBackend B>
FinitePBA tabulate_backend(const B& a, const std::vector<typename B::Element>& pool,
                           const std::vector<std::string>& names) {
    if (pool.size() != names.size())
        throw std::invalid_argument("tabulate_backend: pool/name size mismatch");
    auto find = [&](const typename B::Element& x) {
        for (size_t i = 0; i < pool.size(); ++i)
            if (a.equal(pool[i], x)) return static_cast<int>(i);
        return -1;
    };
    FinitePBA t;
    for (const auto& n : names) t.add_element(n);
    int z = find(a.zero()), o = find(a.one());
    if (z < 0 || o < 0) throw std::invalid_argument("tabulate_backend: pool lacks 0 or 1");
    t.set_zero(z);
    t.set_one(o);
    for (size_t i = 0; i < pool.size(); ++i) {
        int ni = find(a.neg(pool[i]));
        if (ni < 0) throw std::invalid_argument("tabulate_backend: pool not closed under ~");
        t.set_neg(static_cast<int>(i), ni);
        for (size_t j = 0; j < pool.size(); ++j) {
            if (!a.comm(pool[i], pool[j])) continue;
            t.set_comm(static_cast<int>(i), static_cast<int>(j));
            int ji = find(a.join(pool[i], pool[j]));
            int mi = find(a.meet(pool[i], pool[j]));
            if (ji < 0 || mi < 0)
                throw std::invalid_argument("tabulate_backend: pool not closed under join/meet");
            t.set_join(static_cast<int>(i), static_cast<int>(j), ji);
            t.set_meet(static_cast<int>(i), static_cast<int>(j), mi);
        }
    }
    return t;
}

// ---- pBA file format ----------------------------------------------------
//
//   # comment
//   elem <name>
//   zero <name>
//   one <name>
//   comm <name> <name>
//   neg <name> <name>
//   join <name> <name> <name>
//   meet <name> <name> <name>
//
// Commeasurability is closed under reflexivity and symmetry, and 0/1 are
// commeasurable with everything; everything else must be explicit.
FinitePBA parse_pba(const std::string& text);
std::string print_pba(const FinitePBA& a);

// Assignment file: lines "<variable> <element-name>", # comments allowed.
std::map<std::string, int> parse_assignment(const std::string& text, const FinitePBA& a);

}  // namespace pbsat

#endif  // PBSAT_PBA_HPP

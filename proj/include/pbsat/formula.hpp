#ifndef PBSAT_FORMULA_HPP
#define PBSAT_FORMULA_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbsat {

// Propositional formulas over the core connectives {T, variables, ~, |, &}.
// Nodes are immutable and shared; the sugared connectives ->, <->, ^ are
// desugared at construction time:
//   a -> b   ==  ~a | b
//   a <-> b  ==  (a & b) | (~a & ~b)
//   a ^ b    ==  (a & ~b) | (~a & b)
// Bottom is written ~T.
class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Kind { Top, Var, Not, Or, And };

class Formula {
public:
    Kind kind;
    std::string name;       // Kind::Var only
    FormulaPtr lhs, rhs;    // Not uses lhs only

    static FormulaPtr top();
    static FormulaPtr var(const std::string& name);
    static FormulaPtr neg(FormulaPtr f);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    // Sugar (desugared immediately).
    static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
    static FormulaPtr iff(FormulaPtr a, FormulaPtr b);
    static FormulaPtr xor_(FormulaPtr a, FormulaPtr b);

private:
    Formula(Kind k, std::string n, FormulaPtr l, FormulaPtr r)
        : kind(k), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {}
};

// Left-assoc folds of a list (empty list not allowed; callers handle that).
FormulaPtr conj_all(const std::vector<FormulaPtr>& fs);
FormulaPtr disj_all(const std::vector<FormulaPtr>& fs);

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b);

// Parser for the surface grammar
//   form := iff
//   iff  := imp ("<->" imp)*        (left assoc)
//   imp  := xor ("->" xor)*         (right assoc)
//   xor  := or  ("^" or)*           (left assoc)
//   or   := and ("|" and)*          (left assoc)
//   and  := lit ("&" lit)*          (left assoc)
//   lit  := "~" lit | "T" | IDENT | "(" form ")"
// IDENT = [A-Za-z][A-Za-z0-9_]* other than the reserved "T".
// Throws std::runtime_error with position information on malformed input.
FormulaPtr parse_formula(const std::string& text);

// Canonical printer over the core connectives; parse(print(f)) == f.
std::string print_formula(const FormulaPtr& f);

// Variables, sorted lexicographically, no duplicates.
std::vector<std::string> formula_vars(const FormulaPtr& f);

// Distinct subformulas in post-order (children before parents, root last);
// structural duplicates appear once, at their first (leftmost) completion.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

// Two-element Boolean evaluation.  Missing variables throw.
bool eval_classical(const FormulaPtr& f, const std::map<std::string, bool>& alpha);

// Number of connective (non-leaf) nodes in the tree.
int connective_count(const FormulaPtr& f);

// Tseitin transform.  T and bare variables are returned unchanged; otherwise
// each distinct non-leaf subformula psi receives a fresh definition variable
// q_psi and contributes its clause template:
//   ~:  {~v & ~w | ...}  ->  (~v_f|~v_g) & (v_f|v_g)
//   |:  (~v_f|v_g1|v_g2) & (v_f|~v_g1) & (v_f|~v_g2)
//   &:  (v_f|~v_g1|~v_g2) & (~v_f|v_g1) & (~v_f|v_g2)
// The result is q_root & (clauses, in subformula post-order).  Fresh names are
// "q1","q2",...; the prefix gains extra 'q's until it clashes with no input
// variable.
FormulaPtr tseitin(const FormulaPtr& f);

// Commeasurability scaffold.  For distinct variables p,q of f (lexicographic
// order, pairs i<j) the scaffold conjunct is
//   (p&q) | (~p&q) | (p&~q) | (~p&~q)
// or, in CNF form, (~p|p|q) & (~q|q|p).  Returns f & scaffold; formulas with
// fewer than two variables are returned unchanged.
FormulaPtr scaffold(const FormulaPtr& f, bool cnf = false);

// Dimension-padding transform: with q1..q{d+1} fresh,
//   basis_{d+1}(q) & AND_i leq(p_i, ~q_{d+1}) & (f <-> ~q_{d+1})
// where leq(a,b) = (a&b) <-> a and basis_n is the basis formula on n
// variables.  Throws std::invalid_argument if any q_i already occurs in f.
FormulaPtr pad_formula(const FormulaPtr& f, int d);

// Basis formula on the given variables:
//   AND_{i<j} ~(v_i & v_j) & (v_1 | ... | v_n)
FormulaPtr basis_formula(const std::vector<std::string>& vars);

// ---- CNF / DIMACS -------------------------------------------------------

// A literal: positive or negated variable.
struct Lit {
    std::string var;
    bool positive = true;
    bool operator==(const Lit&) const = default;
};
using Clause = std::vector<Lit>;

// Interpret a formula as CNF (a conjunction of disjunctions of literals,
// with T/~T permitted and simplified away: clauses containing T are dropped,
// ~T disappears from its clause).  Throws std::runtime_error if the formula
// is not in clausal shape.  An empty clause is retained (unsatisfiable).
std::vector<Clause> cnf_clauses(const FormulaPtr& f);

// DIMACS CNF serialization of a clausal formula.  Variables are numbered by
// first occurrence, left to right; a `c` comment records the tool version and
// the variable numbering.  Deterministic.
std::string emit_dimacs(const FormulaPtr& f);

extern const char* const kVersionString;  // e.g. "pbsat 0.1.0"

}  // namespace pbsat

#endif  // PBSAT_FORMULA_HPP

#ifndef PBSAT_ER_HPP
#define PBSAT_ER_HPP

#include "pbsat/formula.hpp"
#include "pbsat/projector.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pbsat {

// ---- matrix-level system -------------------------------------------------

// Expressions over the matrix ring with +, -, *, adjoint and the constants
// 0 and 1 (the identity).
struct MatExpr;
using MatExprPtr = std::shared_ptr<const MatExpr>;

enum class MatOp { Var, Zero, One, Add, Sub, Mul, Adjoint };

struct MatExpr {
    MatOp op;
    std::string var;          // Var only
    MatExprPtr lhs, rhs;      // Adjoint uses lhs only

    static MatExprPtr variable(const std::string& name);
    static MatExprPtr zero();
    static MatExprPtr one();
    static MatExprPtr add(MatExprPtr a, MatExprPtr b);
    static MatExprPtr sub(MatExprPtr a, MatExprPtr b);
    static MatExprPtr mul(MatExprPtr a, MatExprPtr b);
    static MatExprPtr adjoint(MatExprPtr a);
};

struct MatEq {
    MatExprPtr lhs, rhs;
};

enum class ErMode { Strong, Weak };

// The matrix-variable system for strong/weak projector satisfiability of a
// formula: one variable P_<l> per formula variable, one variable Z_<k> per
// non-variable subformula (k = post-order position); per-variable projector
// equations, per-connective defining equations with commutator side
// conditions, and one root constraint (Z = 1 for strong, Z != 0 for weak).
struct MatrixSystem {
    std::vector<std::string> variables;  // declaration order
    std::vector<MatEq> equations;
    ErMode mode;
    std::string root;                    // the variable constrained at the root
};

MatrixSystem build_system(const FormulaPtr& phi, ErMode mode);

// ---- scalar sentence -----------------------------------------------------

enum class ErField { Real, Complex };

// Polynomial expressions over real scalar variables.
struct ScalarExpr;
using ScalarExprPtr = std::shared_ptr<const ScalarExpr>;

enum class ScalarOp { Var, Const, Add, Sub, Mul };

struct ScalarExpr {
    ScalarOp op;
    std::string var;          // Var only
    double value = 0;         // Const only
    ScalarExprPtr lhs, rhs;

    static ScalarExprPtr variable(const std::string& name);
    static ScalarExprPtr constant(double v);
    static ScalarExprPtr add(ScalarExprPtr a, ScalarExprPtr b);
    static ScalarExprPtr sub(ScalarExprPtr a, ScalarExprPtr b);
    static ScalarExprPtr mul(ScalarExprPtr a, ScalarExprPtr b);
};

// An atom lhs = rhs or lhs > rhs over the reals.
struct ScalarAtom {
    enum class Kind { Eq, Gt } kind;
    ScalarExprPtr lhs, rhs;
};

struct ScalarSentence {
    std::vector<std::string> variables;  // declaration order
    std::vector<ScalarAtom> atoms;
};

// Entry-wise scalarization at dimension d.  Matrix variable M becomes d*d
// real variables <M>_<i>_<j> (row-major, zero-based); over C each entry
// splits into <...>_re and <...>_im, adjoints conjugate, and the weak root
// constraint becomes a positive sum of entry squares.
ScalarSentence scalarize(const MatrixSystem& sys, int d, ErField field);

// SMT-LIB2 (QF_NRA) emission; byte-deterministic for fixed input.
std::string emit_smt(const ScalarSentence& s);

// Substitutes the values and returns the first violated atom's index, or
// nullopt when all atoms hold (equalities within eps, strict inequalities
// exactly).  Missing variables throw.
std::optional<int> check_witness(const ScalarSentence& s,
                                 const std::map<std::string, double>& values,
                                 double eps = kDefaultEps);

// Renders an atom back to SMT-LIB2 syntax (for reporting).
std::string print_atom(const ScalarAtom& a);

// ---- witness flattening --------------------------------------------------

// Maps a projector assignment for phi to values for every variable of
// scalarize(build_system(phi, mode), d, field): the P variables from the
// assignment, the Z variables by projector-semantics evaluation of the
// corresponding subformulas.
std::map<std::string, double> flatten_witness(const FormulaPtr& phi,
                                              const std::map<std::string, MatC>& alpha, int d,
                                              ErField field);

// Every declared variable set to zero.
std::map<std::string, double> zero_witness(const ScalarSentence& s);

// ---- assignment file -----------------------------------------------------

// Lines "<variable> <value>", # comments allowed.
std::map<std::string, double> parse_scalar_assignment(const std::string& text);

}  // namespace pbsat

#endif  // PBSAT_ER_HPP

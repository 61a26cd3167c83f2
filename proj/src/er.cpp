#include "pbsat/er.hpp"

#include "pbsat/pba.hpp"

#include <cmath>
#include <sstream>

namespace pbsat {

// ---- matrix expressions --------------------------------------------------

namespace {

MatExprPtr make_mat(MatOp op, std::string var, MatExprPtr l, MatExprPtr r) {
    auto e = std::make_shared<MatExpr>();
    e->op = op;
    e->var = std::move(var);
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

}  // namespace

MatExprPtr MatExpr::variable(const std::string& name) {
    return make_mat(MatOp::Var, name, nullptr, nullptr);
}
MatExprPtr MatExpr::zero() { return make_mat(MatOp::Zero, "", nullptr, nullptr); }
MatExprPtr MatExpr::one() { return make_mat(MatOp::One, "", nullptr, nullptr); }
MatExprPtr MatExpr::add(MatExprPtr a, MatExprPtr b) {
    return make_mat(MatOp::Add, "", std::move(a), std::move(b));
}
MatExprPtr MatExpr::sub(MatExprPtr a, MatExprPtr b) {
    return make_mat(MatOp::Sub, "", std::move(a), std::move(b));
}
MatExprPtr MatExpr::mul(MatExprPtr a, MatExprPtr b) {
    return make_mat(MatOp::Mul, "", std::move(a), std::move(b));
}
MatExprPtr MatExpr::adjoint(MatExprPtr a) {
    return make_mat(MatOp::Adjoint, "", std::move(a), nullptr);
}

// ---- build_system --------------------------------------------------------

MatrixSystem build_system(const FormulaPtr& phi, ErMode mode) {
    MatrixSystem sys;
    sys.mode = mode;

    auto subs = subformulas(phi);
    std::map<std::string, std::string> name_of;  // printed subformula -> matrix var
    int tag = 0;
    for (const auto& s : subs) {
        if (s->kind == Kind::Var)
            name_of[print_formula(s)] = "P_" + s->name;
        else
            name_of[print_formula(s)] = "Z_" + std::to_string(++tag);
    }

    for (const auto& v : formula_vars(phi)) sys.variables.push_back("P_" + v);
    for (const auto& s : subs)
        if (s->kind != Kind::Var) sys.variables.push_back(name_of[print_formula(s)]);

    auto V = [&](const FormulaPtr& s) { return MatExpr::variable(name_of[print_formula(s)]); };

    for (const auto& v : formula_vars(phi)) {
        MatExprPtr p = MatExpr::variable("P_" + v);
        sys.equations.push_back({MatExpr::mul(p, p), p});
        sys.equations.push_back({p, MatExpr::adjoint(p)});
    }
    for (const auto& s : subs) {
        switch (s->kind) {
            case Kind::Var:
                break;
            case Kind::Top:
                sys.equations.push_back({V(s), MatExpr::one()});
                break;
            case Kind::Not:
                sys.equations.push_back(
                    {V(s), MatExpr::add(MatExpr::one(),
                                        MatExpr::sub(MatExpr::zero(), V(s->lhs)))});
                break;
            case Kind::And:
                sys.equations.push_back({V(s), MatExpr::mul(V(s->lhs), V(s->rhs))});
                sys.equations.push_back(
                    {MatExpr::sub(MatExpr::mul(V(s->lhs), V(s->rhs)),
                                  MatExpr::mul(V(s->rhs), V(s->lhs))),
                     MatExpr::zero()});
                break;
            case Kind::Or:
                sys.equations.push_back(
                    {V(s), MatExpr::sub(MatExpr::add(V(s->lhs), V(s->rhs)),
                                        MatExpr::mul(V(s->lhs), V(s->rhs)))});
                sys.equations.push_back(
                    {MatExpr::sub(MatExpr::mul(V(s->lhs), V(s->rhs)),
                                  MatExpr::mul(V(s->rhs), V(s->lhs))),
                     MatExpr::zero()});
                break;
        }
    }
    sys.root = name_of[print_formula(phi)];
    return sys;
}

// ---- scalar expressions --------------------------------------------------

namespace {

ScalarExprPtr make_scalar(ScalarOp op, std::string var, double v, ScalarExprPtr l,
                          ScalarExprPtr r) {
    auto e = std::make_shared<ScalarExpr>();
    e->op = op;
    e->var = std::move(var);
    e->value = v;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

bool is_const(const ScalarExprPtr& e, double v) {
    return e->op == ScalarOp::Const && e->value == v;
}

}  // namespace

ScalarExprPtr ScalarExpr::variable(const std::string& name) {
    return make_scalar(ScalarOp::Var, name, 0, nullptr, nullptr);
}
ScalarExprPtr ScalarExpr::constant(double v) {
    return make_scalar(ScalarOp::Const, "", v, nullptr, nullptr);
}
// The factories fold constants so that scalarized entries stay small.
ScalarExprPtr ScalarExpr::add(ScalarExprPtr a, ScalarExprPtr b) {
    if (a->op == ScalarOp::Const && b->op == ScalarOp::Const)
        return constant(a->value + b->value);
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    return make_scalar(ScalarOp::Add, "", 0, std::move(a), std::move(b));
}
ScalarExprPtr ScalarExpr::sub(ScalarExprPtr a, ScalarExprPtr b) {
    if (a->op == ScalarOp::Const && b->op == ScalarOp::Const)
        return constant(a->value - b->value);
    if (is_const(b, 0)) return a;
    return make_scalar(ScalarOp::Sub, "", 0, std::move(a), std::move(b));
}
ScalarExprPtr ScalarExpr::mul(ScalarExprPtr a, ScalarExprPtr b) {
    if (a->op == ScalarOp::Const && b->op == ScalarOp::Const)
        return constant(a->value * b->value);
    if (is_const(a, 0) || is_const(b, 0)) return constant(0);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    return make_scalar(ScalarOp::Mul, "", 0, std::move(a), std::move(b));
}

// ---- scalarize -----------------------------------------------------------

namespace {

// A symbolic complex entry; im is null over the reals.
struct Entry {
    ScalarExprPtr re, im;
};

using EntryGrid = std::vector<std::vector<Entry>>;

struct Scalarizer {
    int d;
    ErField field;

    bool complex() const { return field == ErField::Complex; }

    std::string entry_name(const std::string& var, int i, int j) const {
        return var + "_" + std::to_string(i) + "_" + std::to_string(j);
    }

    EntryGrid grid() const { return EntryGrid(d, std::vector<Entry>(d)); }

    EntryGrid eval(const MatExprPtr& e) const {
        EntryGrid out = grid();
        switch (e->op) {
            case MatOp::Var:
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        std::string base = entry_name(e->var, i, j);
                        if (complex())
                            out[i][j] = {ScalarExpr::variable(base + "_re"),
                                         ScalarExpr::variable(base + "_im")};
                        else
                            out[i][j] = {ScalarExpr::variable(base), nullptr};
                    }
                return out;
            case MatOp::Zero:
            case MatOp::One:
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        double v = (e->op == MatOp::One && i == j) ? 1 : 0;
                        out[i][j] = {ScalarExpr::constant(v),
                                     complex() ? ScalarExpr::constant(0) : nullptr};
                    }
                return out;
            case MatOp::Add:
            case MatOp::Sub: {
                EntryGrid a = eval(e->lhs), b = eval(e->rhs);
                auto combine = e->op == MatOp::Add ? ScalarExpr::add : ScalarExpr::sub;
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        out[i][j].re = combine(a[i][j].re, b[i][j].re);
                        if (complex()) out[i][j].im = combine(a[i][j].im, b[i][j].im);
                    }
                return out;
            }
            case MatOp::Mul: {
                EntryGrid a = eval(e->lhs), b = eval(e->rhs);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        ScalarExprPtr re = ScalarExpr::constant(0);
                        ScalarExprPtr im = ScalarExpr::constant(0);
                        for (int k = 0; k < d; ++k) {
                            re = ScalarExpr::add(
                                re, ScalarExpr::mul(a[i][k].re, b[k][j].re));
                            if (complex()) {
                                re = ScalarExpr::sub(
                                    re, ScalarExpr::mul(a[i][k].im, b[k][j].im));
                                im = ScalarExpr::add(
                                    im, ScalarExpr::mul(a[i][k].re, b[k][j].im));
                                im = ScalarExpr::add(
                                    im, ScalarExpr::mul(a[i][k].im, b[k][j].re));
                            }
                        }
                        out[i][j] = {re, complex() ? im : nullptr};
                    }
                return out;
            }
            case MatOp::Adjoint: {
                EntryGrid a = eval(e->lhs);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) {
                        out[i][j].re = a[j][i].re;
                        if (complex())
                            out[i][j].im = ScalarExpr::sub(ScalarExpr::constant(0), a[j][i].im);
                    }
                return out;
            }
        }
        throw std::logic_error("unreachable");
    }
};

}  // namespace

ScalarSentence scalarize(const MatrixSystem& sys, int d, ErField field) {
    if (d < 1) throw std::invalid_argument("scalarize: d must be positive");
    Scalarizer sc{d, field};
    ScalarSentence out;
    for (const auto& var : sys.variables)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                std::string base = sc.entry_name(var, i, j);
                if (field == ErField::Complex) {
                    out.variables.push_back(base + "_re");
                    out.variables.push_back(base + "_im");
                } else {
                    out.variables.push_back(base);
                }
            }

    auto push_equation = [&](const MatExprPtr& lhs, const MatExprPtr& rhs) {
        EntryGrid l = sc.eval(lhs), r = sc.eval(rhs);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                out.atoms.push_back({ScalarAtom::Kind::Eq, l[i][j].re, r[i][j].re});
                if (field == ErField::Complex)
                    out.atoms.push_back({ScalarAtom::Kind::Eq, l[i][j].im, r[i][j].im});
            }
    };

    for (const auto& eq : sys.equations) push_equation(eq.lhs, eq.rhs);

    if (sys.mode == ErMode::Strong) {
        push_equation(MatExpr::variable(sys.root), MatExpr::one());
    } else {
        // Z_phi != 0 as a sum of entry squares being positive.
        EntryGrid g = sc.eval(MatExpr::variable(sys.root));
        ScalarExprPtr sum = ScalarExpr::constant(0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                sum = ScalarExpr::add(sum, ScalarExpr::mul(g[i][j].re, g[i][j].re));
                if (field == ErField::Complex)
                    sum = ScalarExpr::add(sum, ScalarExpr::mul(g[i][j].im, g[i][j].im));
            }
        out.atoms.push_back({ScalarAtom::Kind::Gt, sum, ScalarExpr::constant(0)});
    }
    return out;
}

// ---- emission ------------------------------------------------------------

namespace {

void print_scalar(std::ostream& os, const ScalarExprPtr& e) {
    switch (e->op) {
        case ScalarOp::Var:
            os << e->var;
            return;
        case ScalarOp::Const: {
            double v = e->value;
            if (v < 0) {
                os << "(- ";
                v = -v;
            }
            if (v == static_cast<long long>(v))
                os << static_cast<long long>(v);
            else
                os << v;
            if (e->value < 0) os << ")";
            return;
        }
        case ScalarOp::Add:
        case ScalarOp::Sub:
        case ScalarOp::Mul: {
            os << '(' << (e->op == ScalarOp::Add ? '+' : e->op == ScalarOp::Sub ? '-' : '*')
               << ' ';
            print_scalar(os, e->lhs);
            os << ' ';
            print_scalar(os, e->rhs);
            os << ')';
            return;
        }
    }
}

}  // namespace

std::string print_atom(const ScalarAtom& a) {
    std::ostringstream os;
    os << '(' << (a.kind == ScalarAtom::Kind::Eq ? "=" : ">") << ' ';
    print_scalar(os, a.lhs);
    os << ' ';
    print_scalar(os, a.rhs);
    os << ')';
    return os.str();
}

std::string emit_smt(const ScalarSentence& s) {
    std::ostringstream os;
    os << "; " << kVersionString << "\n";
    os << "(set-logic QF_NRA)\n";
    for (const auto& v : s.variables) os << "(declare-const " << v << " Real)\n";
    for (const auto& a : s.atoms) os << "(assert " << print_atom(a) << ")\n";
    os << "(check-sat)\n";
    return os.str();
}

// ---- witness checking ----------------------------------------------------

namespace {

double eval_scalar(const ScalarExprPtr& e, const std::map<std::string, double>& values) {
    switch (e->op) {
        case ScalarOp::Var: {
            auto it = values.find(e->var);
            if (it == values.end())
                throw std::runtime_error("check_witness: unassigned variable '" + e->var + "'");
            return it->second;
        }
        case ScalarOp::Const:
            return e->value;
        case ScalarOp::Add:
            return eval_scalar(e->lhs, values) + eval_scalar(e->rhs, values);
        case ScalarOp::Sub:
            return eval_scalar(e->lhs, values) - eval_scalar(e->rhs, values);
        case ScalarOp::Mul:
            return eval_scalar(e->lhs, values) * eval_scalar(e->rhs, values);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

std::optional<int> check_witness(const ScalarSentence& s,
                                 const std::map<std::string, double>& values, double eps) {
    for (size_t k = 0; k < s.atoms.size(); ++k) {
        double l = eval_scalar(s.atoms[k].lhs, values);
        double r = eval_scalar(s.atoms[k].rhs, values);
        bool ok = s.atoms[k].kind == ScalarAtom::Kind::Eq ? std::abs(l - r) <= eps : l > r;
        if (!ok) return static_cast<int>(k);
    }
    return std::nullopt;
}

// ---- witness flattening --------------------------------------------------

std::map<std::string, double> flatten_witness(const FormulaPtr& phi,
                                              const std::map<std::string, MatC>& alpha, int d,
                                              ErField field) {
    ProjectorOpsC ops(d);
    std::map<std::string, double> out;

    auto emit_matrix = [&](const std::string& var, const MatC& m) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                std::string base = var + "_" + std::to_string(i) + "_" + std::to_string(j);
                if (field == ErField::Complex) {
                    out[base + "_re"] = m(i, j).real();
                    out[base + "_im"] = m(i, j).imag();
                } else {
                    if (std::abs(m(i, j).imag()) > kDefaultEps)
                        throw std::invalid_argument(
                            "flatten_witness: complex entries in a real flattening");
                    out[base] = m(i, j).real();
                }
            }
    };

    for (const auto& [var, m] : alpha) emit_matrix("P_" + var, m);
    int tag = 0;
    for (const auto& s : subformulas(phi)) {
        if (s->kind == Kind::Var) continue;
        ++tag;
        auto ev = meaningful_eval(s, alpha, ops);
        if (!ev.value)
            throw std::invalid_argument("flatten_witness: assignment is not meaningful");
        emit_matrix("Z_" + std::to_string(tag), *ev.value);
    }
    return out;
}

std::map<std::string, double> zero_witness(const ScalarSentence& s) {
    std::map<std::string, double> out;
    for (const auto& v : s.variables) out[v] = 0;
    return out;
}

std::map<std::string, double> parse_scalar_assignment(const std::string& text) {
    std::map<std::string, double> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string var;
        if (!(ls >> var) || var[0] == '#') continue;
        double v;
        if (!(ls >> v))
            throw std::runtime_error("assignment line " + std::to_string(lineno) +
                                     ": expected a numeric value");
        out[var] = v;
    }
    return out;
}

}  // namespace pbsat

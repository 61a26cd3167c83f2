#include "pbsat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pbsat {

const char* const kVersionString = "pbsat 0.1.0";

// ---- construction -------------------------------------------------------

FormulaPtr Formula::top() {
    static FormulaPtr t(new Formula(Kind::Top, "", nullptr, nullptr));
    return t;
}

FormulaPtr Formula::var(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        throw std::invalid_argument("variable name must start with a letter: '" + name + "'");
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw std::invalid_argument("bad character in variable name: '" + name + "'");
    if (name == "T") throw std::invalid_argument("'T' is reserved");
    return FormulaPtr(new Formula(Kind::Var, name, nullptr, nullptr));
}

FormulaPtr Formula::neg(FormulaPtr f) {
    return FormulaPtr(new Formula(Kind::Not, "", std::move(f), nullptr));
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
    return FormulaPtr(new Formula(Kind::Or, "", std::move(a), std::move(b)));
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
    return FormulaPtr(new Formula(Kind::And, "", std::move(a), std::move(b)));
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
    return disj(neg(std::move(a)), std::move(b));
}

FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) {
    return disj(conj(a, b), conj(neg(a), neg(b)));
}

FormulaPtr Formula::xor_(FormulaPtr a, FormulaPtr b) {
    return disj(conj(a, neg(b)), conj(neg(a), b));
}

FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) throw std::invalid_argument("conj_all: empty list");
    FormulaPtr acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
    return acc;
}

FormulaPtr disj_all(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) throw std::invalid_argument("disj_all: empty list");
    FormulaPtr acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
    return acc;
}

bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Kind::Top: return true;
        case Kind::Var: return a->name == b->name;
        case Kind::Not: return structurally_equal(a->lhs, b->lhs);
        default:
            return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
    }
}

// ---- parser -------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "parse error at position " << pos << ": " << msg;
        throw std::runtime_error(os.str());
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(const std::string& tok) {
        skip_ws();
        if (s.compare(pos, tok.size(), tok) == 0) {
            // "->" must not consume the arrow of "<->"; handled by trying
            // "<->" first in the iff loop, so plain prefix match suffices.
            pos += tok.size();
            return true;
        }
        return false;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    FormulaPtr form() { return iff(); }

    FormulaPtr iff() {
        FormulaPtr acc = imp();
        while (true) {
            skip_ws();
            if (s.compare(pos, 3, "<->") == 0) {
                pos += 3;
                acc = Formula::iff(acc, imp());
            } else {
                return acc;
            }
        }
    }

    FormulaPtr imp() {
        FormulaPtr left = xr();
        skip_ws();
        if (s.compare(pos, 3, "<->") == 0) return left;  // belongs to iff()
        if (s.compare(pos, 2, "->") == 0) {
            pos += 2;
            return Formula::implies(left, imp());  // right assoc
        }
        return left;
    }

    FormulaPtr xr() {
        FormulaPtr acc = orf();
        while (eat("^")) acc = Formula::xor_(acc, orf());
        return acc;
    }

    FormulaPtr orf() {
        FormulaPtr acc = andf();
        while (eat("|")) acc = Formula::disj(acc, andf());
        return acc;
    }

    FormulaPtr andf() {
        FormulaPtr acc = lit();
        while (eat("&")) acc = Formula::conj(acc, lit());
        return acc;
    }

    FormulaPtr lit() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '~') {
            ++pos;
            return Formula::neg(lit());
        }
        if (c == '(') {
            ++pos;
            FormulaPtr f = form();
            skip_ws();
            if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
            ++pos;
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string id = s.substr(start, pos - start);
            if (id == "T") return Formula::top();
            return Formula::var(id);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser p(text);
    FormulaPtr f = p.form();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return f;
}

// ---- printer ------------------------------------------------------------

namespace {

// Precedence: ~ (3) > & (2) > | (1).  Left-assoc chains print unparenthesized.
void print_rec(const FormulaPtr& f, int parent_prec, bool right_child, std::string& out) {
    switch (f->kind) {
        case Kind::Top: out += 'T'; return;
        case Kind::Var: out += f->name; return;
        case Kind::Not:
            out += '~';
            print_rec(f->lhs, 3, false, out);
            return;
        case Kind::Or:
        case Kind::And: {
            int prec = f->kind == Kind::Or ? 1 : 2;
            bool paren = prec < parent_prec || (prec == parent_prec && right_child);
            if (paren) out += '(';
            print_rec(f->lhs, prec, false, out);
            out += f->kind == Kind::Or ? " | " : " & ";
            print_rec(f->rhs, prec, true, out);
            if (paren) out += ')';
            return;
        }
    }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
    std::string out;
    print_rec(f, 0, false, out);
    return out;
}

// ---- structural queries -------------------------------------------------

namespace {

void vars_rec(const FormulaPtr& f, std::set<std::string>& out) {
    switch (f->kind) {
        case Kind::Top: return;
        case Kind::Var: out.insert(f->name); return;
        case Kind::Not: vars_rec(f->lhs, out); return;
        default:
            vars_rec(f->lhs, out);
            vars_rec(f->rhs, out);
    }
}

void sub_rec(const FormulaPtr& f, std::vector<FormulaPtr>& out,
             std::unordered_set<std::string>& seen) {
    if (f->kind == Kind::Not) {
        sub_rec(f->lhs, out, seen);
    } else if (f->kind == Kind::Or || f->kind == Kind::And) {
        sub_rec(f->lhs, out, seen);
        sub_rec(f->rhs, out, seen);
    }
    std::string key = print_formula(f);
    if (seen.insert(std::move(key)).second) out.push_back(f);
}

}  // namespace

std::vector<std::string> formula_vars(const FormulaPtr& f) {
    std::set<std::string> s;
    vars_rec(f, s);
    return {s.begin(), s.end()};
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
    std::vector<FormulaPtr> out;
    std::unordered_set<std::string> seen;
    sub_rec(f, out, seen);
    return out;
}

bool eval_classical(const FormulaPtr& f, const std::map<std::string, bool>& alpha) {
    switch (f->kind) {
        case Kind::Top: return true;
        case Kind::Var: {
            auto it = alpha.find(f->name);
            if (it == alpha.end())
                throw std::runtime_error("eval_classical: unassigned variable '" + f->name + "'");
            return it->second;
        }
        case Kind::Not: return !eval_classical(f->lhs, alpha);
        case Kind::Or: return eval_classical(f->lhs, alpha) || eval_classical(f->rhs, alpha);
        case Kind::And: return eval_classical(f->lhs, alpha) && eval_classical(f->rhs, alpha);
    }
    throw std::logic_error("unreachable");
}

int connective_count(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::Top:
        case Kind::Var: return 0;
        case Kind::Not: return 1 + connective_count(f->lhs);
        default: return 1 + connective_count(f->lhs) + connective_count(f->rhs);
    }
}

// ---- Tseitin ------------------------------------------------------------

FormulaPtr tseitin(const FormulaPtr& f) {
    if (f->kind == Kind::Top || f->kind == Kind::Var) return f;

    auto subs = subformulas(f);
    std::set<std::string> used;
    vars_rec(f, used);

    std::string prefix = "q";
    auto clashes = [&](const std::string& pre) {
        for (const auto& v : used)
            if (v.size() > pre.size() && v.compare(0, pre.size(), pre) == 0 &&
                std::all_of(v.begin() + pre.size(), v.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                return true;
        return false;
    };
    while (clashes(prefix)) prefix += 'q';

    // v(psi): the literal standing for psi in the clause templates.
    std::unordered_map<std::string, FormulaPtr> v;
    int counter = 0;
    for (const auto& psi : subs) {
        std::string key = print_formula(psi);
        if (psi->kind == Kind::Top) {
            v[key] = Formula::top();
        } else if (psi->kind == Kind::Var) {
            v[key] = psi;
        } else {
            v[key] = Formula::var(prefix + std::to_string(++counter));
        }
    }
    auto vo = [&](const FormulaPtr& psi) { return v.at(print_formula(psi)); };

    std::vector<FormulaPtr> clauses;
    for (const auto& psi : subs) {
        FormulaPtr q, a, b;
        switch (psi->kind) {
            case Kind::Top:
            case Kind::Var: continue;
            case Kind::Not:
                q = vo(psi);
                a = vo(psi->lhs);
                clauses.push_back(Formula::disj(Formula::neg(q), Formula::neg(a)));
                clauses.push_back(Formula::disj(q, a));
                break;
            case Kind::Or:
                q = vo(psi);
                a = vo(psi->lhs);
                b = vo(psi->rhs);
                clauses.push_back(Formula::disj(Formula::disj(Formula::neg(q), a), b));
                clauses.push_back(Formula::disj(q, Formula::neg(a)));
                clauses.push_back(Formula::disj(q, Formula::neg(b)));
                break;
            case Kind::And:
                q = vo(psi);
                a = vo(psi->lhs);
                b = vo(psi->rhs);
                clauses.push_back(Formula::disj(Formula::disj(q, Formula::neg(a)), Formula::neg(b)));
                clauses.push_back(Formula::disj(Formula::neg(q), a));
                clauses.push_back(Formula::disj(Formula::neg(q), b));
                break;
        }
    }

    FormulaPtr acc = vo(f);
    for (const auto& c : clauses) acc = Formula::conj(acc, c);
    return acc;
}

// ---- scaffold -----------------------------------------------------------

FormulaPtr scaffold(const FormulaPtr& f, bool cnf) {
    auto vars = formula_vars(f);
    if (vars.size() < 2) return f;

    std::vector<FormulaPtr> conjuncts;
    for (size_t i = 0; i < vars.size(); ++i) {
        for (size_t j = i + 1; j < vars.size(); ++j) {
            FormulaPtr p = Formula::var(vars[i]);
            FormulaPtr q = Formula::var(vars[j]);
            if (cnf) {
                conjuncts.push_back(
                    Formula::disj(Formula::disj(Formula::neg(p), p), q));
                conjuncts.push_back(
                    Formula::disj(Formula::disj(Formula::neg(q), q), p));
            } else {
                conjuncts.push_back(disj_all({
                    Formula::conj(p, q),
                    Formula::conj(Formula::neg(p), q),
                    Formula::conj(p, Formula::neg(q)),
                    Formula::conj(Formula::neg(p), Formula::neg(q)),
                }));
            }
        }
    }
    return Formula::conj(f, conj_all(conjuncts));
}

// ---- basis / padding ----------------------------------------------------

FormulaPtr basis_formula(const std::vector<std::string>& vars) {
    if (vars.empty()) throw std::invalid_argument("basis_formula: no variables");
    std::vector<FormulaPtr> parts;
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            parts.push_back(Formula::neg(
                Formula::conj(Formula::var(vars[i]), Formula::var(vars[j]))));
    std::vector<FormulaPtr> atoms;
    atoms.reserve(vars.size());
    for (const auto& v : vars) atoms.push_back(Formula::var(v));
    parts.push_back(disj_all(atoms));
    return conj_all(parts);
}

namespace {

// leq(a,b) = (a & b) <-> a
FormulaPtr leq_formula(FormulaPtr a, FormulaPtr b) {
    return Formula::iff(Formula::conj(a, std::move(b)), a);
}

}  // namespace

FormulaPtr pad_formula(const FormulaPtr& f, int d) {
    if (d < 1) throw std::invalid_argument("pad_formula: d must be positive");
    auto vars = formula_vars(f);
    std::set<std::string> var_set(vars.begin(), vars.end());

    std::vector<std::string> q;
    for (int i = 1; i <= d + 1; ++i) {
        std::string name = "q" + std::to_string(i);
        if (var_set.count(name))
            throw std::invalid_argument("pad_formula: variable '" + name + "' already occurs");
        q.push_back(name);
    }

    FormulaPtr not_q_last = Formula::neg(Formula::var(q.back()));
    std::vector<FormulaPtr> parts{basis_formula(q)};
    for (const auto& p : vars)
        parts.push_back(leq_formula(Formula::var(p), not_q_last));
    parts.push_back(Formula::iff(f, not_q_last));
    return conj_all(parts);
}

// ---- CNF / DIMACS -------------------------------------------------------

namespace {

void collect_clause(const FormulaPtr& f, Clause& out, bool& has_top) {
    switch (f->kind) {
        case Kind::Or:
            collect_clause(f->lhs, out, has_top);
            collect_clause(f->rhs, out, has_top);
            return;
        case Kind::Var: out.push_back({f->name, true}); return;
        case Kind::Top: has_top = true; return;
        case Kind::Not:
            if (f->lhs->kind == Kind::Var) {
                out.push_back({f->lhs->name, false});
                return;
            }
            if (f->lhs->kind == Kind::Top) return;  // ~T: drop the literal
            throw std::runtime_error("not in clausal form: negation of a non-atom");
        case Kind::And:
            throw std::runtime_error("not in clausal form: '&' below '|'");
    }
}

void collect_cnf(const FormulaPtr& f, std::vector<Clause>& out) {
    if (f->kind == Kind::And) {
        collect_cnf(f->lhs, out);
        collect_cnf(f->rhs, out);
        return;
    }
    if (f->kind == Kind::Top) return;  // trivially true conjunct
    Clause c;
    bool has_top = false;
    collect_clause(f, c, has_top);
    if (!has_top) out.push_back(std::move(c));
}

}  // namespace

std::vector<Clause> cnf_clauses(const FormulaPtr& f) {
    std::vector<Clause> out;
    collect_cnf(f, out);
    return out;
}

std::string emit_dimacs(const FormulaPtr& f) {
    auto clauses = cnf_clauses(f);
    std::vector<std::string> order;
    std::unordered_map<std::string, int> num;
    for (const auto& c : clauses)
        for (const auto& l : c)
            if (num.emplace(l.var, static_cast<int>(order.size()) + 1).second)
                order.push_back(l.var);

    std::ostringstream os;
    os << "c " << kVersionString << "\n";
    for (size_t i = 0; i < order.size(); ++i)
        os << "c var " << (i + 1) << " = " << order[i] << "\n";
    os << "p cnf " << order.size() << ' ' << clauses.size() << "\n";
    for (const auto& c : clauses) {
        for (const auto& l : c) os << (l.positive ? "" : "-") << num.at(l.var) << ' ';
        os << "0\n";
    }
    return os.str();
}

}  // namespace pbsat

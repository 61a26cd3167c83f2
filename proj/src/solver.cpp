#include "pbsat/solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pbsat {

// ---- classical SAT (DPLL) -----------------------------------------------

namespace {

struct DpllState {
    std::vector<std::vector<int>> clauses;  // literals: +v / -v, v >= 1
    std::vector<int> assign;                // 1-based: -1 unset, 0/1 set

    bool propagate_and_search() {
        // Unit propagation to fixpoint.
        std::vector<int> trail;
        while (true) {
            bool changed = false;
            for (const auto& c : clauses) {
                int unassigned = 0, last = 0;
                bool sat = false;
                for (int lit : c) {
                    int v = std::abs(lit);
                    if (assign[v] < 0) {
                        ++unassigned;
                        last = lit;
                    } else if (assign[v] == (lit > 0 ? 1 : 0)) {
                        sat = true;
                        break;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) {  // conflict
                    for (int v : trail) assign[v] = -1;
                    return false;
                }
                if (unassigned == 1) {
                    int v = std::abs(last);
                    assign[v] = last > 0 ? 1 : 0;
                    trail.push_back(v);
                    changed = true;
                }
            }
            if (!changed) break;
        }
        // Branch on the lowest-index unassigned variable, 1 first.
        int branch = -1;
        for (size_t v = 1; v < assign.size(); ++v)
            if (assign[v] < 0) {
                branch = static_cast<int>(v);
                break;
            }
        if (branch < 0) return true;
        for (int val : {1, 0}) {
            assign[branch] = val;
            if (propagate_and_search()) return true;
        }
        assign[branch] = -1;
        for (int v : trail) assign[v] = -1;
        return false;
    }
};

}  // namespace

std::optional<std::map<std::string, bool>> sat_classical(const std::vector<Clause>& clauses) {
    std::vector<std::string> order;
    std::unordered_map<std::string, int> num;
    for (const auto& c : clauses)
        for (const auto& l : c)
            if (num.emplace(l.var, static_cast<int>(order.size()) + 1).second)
                order.push_back(l.var);

    DpllState st;
    st.assign.assign(order.size() + 1, -1);
    for (const auto& c : clauses) {
        std::vector<int> lits;
        lits.reserve(c.size());
        for (const auto& l : c) lits.push_back(l.positive ? num[l.var] : -num[l.var]);
        st.clauses.push_back(std::move(lits));
    }
    if (!st.propagate_and_search()) return std::nullopt;
    std::map<std::string, bool> model;
    for (size_t i = 0; i < order.size(); ++i)
        model[order[i]] = st.assign[i + 1] == 1;  // unconstrained -> 0
    return model;
}

std::optional<std::map<std::string, bool>> sat_classical(const FormulaPtr& cnf) {
    return sat_classical(cnf_clauses(cnf));
}

// ---- VARSAT -------------------------------------------------------------

namespace {

// Postfix program for tree evaluation over a finite pBA.
struct EvalProg {
    enum Op : char { Const1, Var, Not, Or, And };
    struct Ins {
        Op op;
        int arg;  // variable slot for Var
    };
    std::vector<Ins> code;
    std::vector<std::string> vars;  // slot -> name, in search order

    static constexpr int kUnknown = -1;
    static constexpr int kUndef = -2;

    // Evaluates under a partial assignment (kUnknown for unset slots).
    // Returns the value index, kUnknown, or kUndef (meaningless for every
    // completion of the assignment).
    int run(const FinitePBA& a, const std::vector<int>& vals, std::vector<int>& stack) const {
        stack.clear();
        for (const auto& ins : code) {
            switch (ins.op) {
                case Const1: stack.push_back(a.one()); break;
                case Var: stack.push_back(vals[ins.arg]); break;
                case Not: {
                    int x = stack.back();
                    if (x >= 0) stack.back() = a.neg(x);
                    break;  // kUnknown / kUndef propagate unchanged
                }
                case Or:
                case And: {
                    int r = stack.back();
                    stack.pop_back();
                    int l = stack.back();
                    if (l == kUndef || r == kUndef) {
                        stack.back() = kUndef;
                    } else if (l == kUnknown || r == kUnknown) {
                        stack.back() = kUnknown;
                    } else if (!a.comm(l, r)) {
                        stack.back() = kUndef;
                    } else {
                        stack.back() = ins.op == Or ? a.join(l, r) : a.meet(l, r);
                    }
                    break;
                }
            }
        }
        return stack.back();
    }
};

void compile_rec(const FormulaPtr& f, const std::unordered_map<std::string, int>& slot,
                 std::vector<EvalProg::Ins>& code) {
    switch (f->kind) {
        case Kind::Top: code.push_back({EvalProg::Const1, 0}); return;
        case Kind::Var: code.push_back({EvalProg::Var, slot.at(f->name)}); return;
        case Kind::Not:
            compile_rec(f->lhs, slot, code);
            code.push_back({EvalProg::Not, 0});
            return;
        case Kind::Or:
        case Kind::And:
            compile_rec(f->lhs, slot, code);
            compile_rec(f->rhs, slot, code);
            code.push_back({f->kind == Kind::Or ? EvalProg::Or : EvalProg::And, 0});
            return;
    }
}

EvalProg compile(const FormulaPtr& f) {
    // Variable search order: descending occurrence count, ties broken by
    // first appearance in the post-order subformula walk.
    struct Info {
        int count = 0;
        int first = 0;
    };
    std::unordered_map<std::string, Info> info;
    int tick = 0;
    auto walk = [&](auto&& self, const FormulaPtr& g) -> void {
        if (g->kind == Kind::Var) {
            auto it = info.try_emplace(g->name, Info{0, tick}).first;
            ++it->second.count;
            ++tick;
            return;
        }
        if (g->kind == Kind::Not) {
            self(self, g->lhs);
        } else if (g->kind != Kind::Top) {
            self(self, g->lhs);
            self(self, g->rhs);
        }
        ++tick;
    };
    walk(walk, f);

    EvalProg prog;
    for (const auto& [name, i] : info) prog.vars.push_back(name);
    std::sort(prog.vars.begin(), prog.vars.end(), [&](const std::string& x, const std::string& y) {
        const Info& a = info.at(x);
        const Info& b = info.at(y);
        if (a.count != b.count) return a.count > b.count;
        return a.first < b.first;
    });
    std::unordered_map<std::string, int> slot;
    for (size_t i = 0; i < prog.vars.size(); ++i) slot[prog.vars[i]] = static_cast<int>(i);
    compile_rec(f, slot, prog.code);
    return prog;
}

VarsatOutcome varsat_impl(const FinitePBA& a, const FormulaPtr& f, long long budget,
                          bool weak, int target) {
    EvalProg prog = compile(f);
    int nvars = static_cast<int>(prog.vars.size());
    std::vector<int> vals(nvars, EvalProg::kUnknown), stack;
    VarsatOutcome out;

    auto accept = [&](int v) { return weak ? v != a.zero() : v == target; };

    auto rec = [&](auto&& self, int depth) -> SearchStatus {
        if (++out.nodes > budget) return SearchStatus::BudgetExceeded;
        int v = prog.run(a, vals, stack);
        if (v == EvalProg::kUndef) return SearchStatus::No;
        if (depth == nvars) {
            return v >= 0 && accept(v) ? SearchStatus::Found : SearchStatus::No;
        }
        if (v >= 0 && !accept(v)) return SearchStatus::No;  // value already forced
        for (int e = 0; e < a.size(); ++e) {
            vals[depth] = e;
            SearchStatus s = self(self, depth + 1);
            if (s != SearchStatus::No) return s;
        }
        vals[depth] = EvalProg::kUnknown;
        return SearchStatus::No;
    };
    out.status = rec(rec, 0);
    if (out.status == SearchStatus::Found)
        for (int i = 0; i < nvars; ++i) out.assignment[prog.vars[i]] = vals[i];
    return out;
}

}  // namespace

VarsatOutcome varsat(const FinitePBA& a, int target, const FormulaPtr& f, long long budget) {
    if (target < 0 || target >= a.size())
        throw std::invalid_argument("varsat: target element out of range");
    return varsat_impl(a, f, budget, false, target);
}

VarsatOutcome varsat_weak(const FinitePBA& a, const FormulaPtr& f, long long budget) {
    return varsat_impl(a, f, budget, true, -1);
}

// ---- certificate verification -------------------------------------------

namespace {

bool eq_respected(const CertEq& e, const std::vector<int>& pos, const std::vector<char>& nu) {
    auto val = [&](int vtx) { return static_cast<int>(nu[pos[vtx]]); };
    switch (e.shape) {
        case CertEq::Shape::Join: return val(e.x) == (val(e.y) | val(e.z));
        case CertEq::Shape::Meet: return val(e.x) == (val(e.y) & val(e.z));
        case CertEq::Shape::Neg: return val(e.x) == 1 - val(e.y);
        case CertEq::Shape::One: return val(e.x) == 1;
        case CertEq::Shape::Zero: return val(e.x) == 0;
        case CertEq::Shape::Same: return val(e.x) == val(e.y);
    }
    return false;
}

bool has_eq(const CertClique& c, const CertEq& e) {
    for (const auto& q : c.eqs) {
        if (q.shape != e.shape || q.x != e.x) continue;
        if (e.shape == CertEq::Shape::Join || e.shape == CertEq::Shape::Meet) {
            if ((q.y == e.y && q.z == e.z) || (q.y == e.z && q.z == e.y)) return true;
        } else if (e.shape == CertEq::Shape::Neg || e.shape == CertEq::Shape::Same) {
            if (q.y == e.y) return true;
        } else {
            return true;
        }
    }
    return false;
}

}  // namespace

bool cert_verify(const NonTrivCert& cert, const FormulaPtr& f, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    int n = cert.vertex_count();
    if (static_cast<int>(cert.tags.size()) != n) return fail("tags/vertex size mismatch");

    auto subs = subformulas(f);
    std::vector<int> tag(subs.size(), -1);
    for (int v = 0; v < n; ++v)
        for (int si : cert.tags[v]) {
            if (si < 0 || si >= static_cast<int>(subs.size()))
                return fail("tag refers to a non-existent subformula");
            if (tag[si] >= 0) return fail("subformula tagged twice");
            tag[si] = v;
        }
    for (size_t i = 0; i < subs.size(); ++i)
        if (tag[i] < 0) return fail("subformula " + print_formula(subs[i]) + " untagged");
    int root = tag[subs.size() - 1];

    std::set<std::pair<int, int>> edges;
    for (auto [u, v] : cert.edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) return fail("bad edge");
        edges.insert({std::min(u, v), std::max(u, v)});
    }
    auto adjacent = [&](int u, int v) {
        return u == v || edges.count({std::min(u, v), std::max(u, v)}) > 0;
    };
    std::set<std::pair<int, int>> rel(cert.rel.begin(), cert.rel.end());
    for (auto [u, v] : rel)
        if (u < 0 || v < 0 || u >= n || v >= n) return fail("bad leq claim");

    if (cert.cliques.empty()) return fail("empty clique cover");

    // Structural checks per clique, and membership index.
    std::vector<std::vector<int>> pos(cert.cliques.size(), std::vector<int>(n, -1));
    for (size_t ci = 0; ci < cert.cliques.size(); ++ci) {
        const auto& c = cert.cliques[ci];
        if (c.members.empty()) return fail("empty clique");
        for (size_t i = 0; i < c.members.size(); ++i) {
            int m = c.members[i];
            if (m < 0 || m >= n) return fail("clique member out of range");
            if (pos[ci][m] >= 0) return fail("duplicate clique member");
            pos[ci][m] = static_cast<int>(i);
            for (size_t j = i + 1; j < c.members.size(); ++j)
                if (!adjacent(m, c.members[j])) return fail("clique members not adjacent");
        }
        for (const auto& e : c.eqs)
            for (int vtx : {e.x, e.y, e.z})
                if (vtx >= 0 && pos[ci][vtx] < 0) return fail("equation mentions a non-member");
    }
    for (auto [u, v] : edges) {
        bool covered = false;
        for (size_t ci = 0; ci < cert.cliques.size() && !covered; ++ci)
            covered = pos[ci][u] >= 0 && pos[ci][v] >= 0;
        if (!covered) return fail("edge not covered by any clique");
    }

    // Connective conditions: operand edge; defining equation present in some
    // clique containing the connective's vertices — and, for soundness, in
    // every clique containing them (an algebra view cannot omit a true
    // height-1 equation from a context that sees all its vertices).
    auto sub_index_of = [&](const FormulaPtr& g) {
        std::string key = print_formula(g);
        for (size_t i = 0; i < subs.size(); ++i)
            if (print_formula(subs[i]) == key) return static_cast<int>(i);
        return -1;
    };
    std::vector<CertEq> required;  // instantiated defining equations
    for (size_t i = 0; i < subs.size(); ++i) {
        const auto& s = subs[i];
        if (s->kind == Kind::Top) {
            required.push_back({CertEq::Shape::One, tag[i]});
        } else if (s->kind == Kind::Not) {
            required.push_back({CertEq::Shape::Neg, tag[i], tag[sub_index_of(s->lhs)]});
        } else if (s->kind == Kind::Or || s->kind == Kind::And) {
            int l = tag[sub_index_of(s->lhs)], r = tag[sub_index_of(s->rhs)];
            if (!adjacent(l, r)) return fail("operand edge missing for " + print_formula(s));
            required.push_back({s->kind == Kind::Or ? CertEq::Shape::Join : CertEq::Shape::Meet,
                                tag[i], l, r});
        }
    }
    required.push_back({CertEq::Shape::One, root});
    for (const auto& req : required) {
        bool somewhere = false;
        for (size_t ci = 0; ci < cert.cliques.size(); ++ci) {
            bool inside = true;
            for (int vtx : {req.x, req.y, req.z})
                if (vtx >= 0 && pos[ci][vtx] < 0) inside = false;
            if (!inside) continue;
            if (!has_eq(cert.cliques[ci], req))
                return fail("clique omits a forced equation it can see");
            somewhere = true;
        }
        if (!somewhere) return fail("defining equation appears in no clique");
    }

    // Separators: every unclaimed ordered pair inside a clique needs one;
    // all provided separators must be coherent; every clique needs at least
    // one respecting valuation.
    for (size_t ci = 0; ci < cert.cliques.size(); ++ci) {
        const auto& c = cert.cliques[ci];
        size_t k = c.members.size();
        std::vector<char> have(k * k, 0);
        bool any_valuation = false;
        for (const auto& s : c.seps) {
            if (s.a < 0 || s.b < 0 || pos[ci][s.a] < 0 || pos[ci][s.b] < 0)
                return fail("separator endpoints not in clique");
            if (s.nu.size() != k) return fail("separator valuation has wrong size");
            for (char bit : s.nu)
                if (bit != 0 && bit != 1) return fail("separator valuation not 0/1");
            if (s.nu[pos[ci][s.a]] != 1 || s.nu[pos[ci][s.b]] != 0)
                return fail("separator does not separate its pair");
            for (const auto& e : c.eqs)
                if (!eq_respected(e, pos[ci], s.nu)) return fail("separator violates Eq(C)");
            have[pos[ci][s.a] * k + pos[ci][s.b]] = 1;
            any_valuation = true;
        }
        for (int u : c.members)
            for (int v : c.members) {
                if (u == v || rel.count({u, v})) continue;
                if (!have[pos[ci][u] * k + pos[ci][v]])
                    return fail("missing separator for an unclaimed pair");
            }
        if (!any_valuation) {
            // No separators were needed; search for a respecting valuation.
            if (k > 20) return fail("clique too large to certify consistency");
            bool found = false;
            for (unsigned long mask = 0; mask < (1ul << k) && !found; ++mask) {
                std::vector<char> nu(k);
                for (size_t i = 0; i < k; ++i) nu[i] = (mask >> i) & 1;
                found = std::all_of(c.eqs.begin(), c.eqs.end(),
                                    [&](const CertEq& e) { return eq_respected(e, pos[ci], nu); });
            }
            if (!found) return fail("clique equations admit no valuation");
        }
    }
    return true;
}

// ---- certificate serialization ------------------------------------------

namespace {

const char* shape_name(CertEq::Shape s) {
    switch (s) {
        case CertEq::Shape::Join: return "join";
        case CertEq::Shape::Meet: return "meet";
        case CertEq::Shape::Neg: return "neg";
        case CertEq::Shape::One: return "one";
        case CertEq::Shape::Zero: return "zero";
        case CertEq::Shape::Same: return "same";
    }
    return "?";
}

}  // namespace

std::string print_cert(const NonTrivCert& cert) {
    std::ostringstream os;
    os << "# " << kVersionString << "\n";
    for (int v = 0; v < cert.vertex_count(); ++v) {
        os << "vertex " << v << ' ' << cert.vertex_names[v];
        for (int t : cert.tags[v]) os << ' ' << t;
        os << "\n";
    }
    for (auto [u, v] : cert.edges) os << "edge " << u << ' ' << v << "\n";
    for (auto [u, v] : cert.rel) os << "leq " << u << ' ' << v << "\n";
    for (size_t ci = 0; ci < cert.cliques.size(); ++ci) {
        const auto& c = cert.cliques[ci];
        os << "clique " << ci;
        for (int m : c.members) os << ' ' << m;
        os << "\n";
        for (const auto& e : c.eqs) {
            os << "eq " << ci << ' ' << shape_name(e.shape) << ' ' << e.x;
            if (e.y >= 0) os << ' ' << e.y;
            if (e.z >= 0) os << ' ' << e.z;
            os << "\n";
        }
        for (const auto& s : c.seps) {
            os << "sep " << ci << ' ' << s.a << ' ' << s.b;
            for (char bit : s.nu) os << ' ' << static_cast<int>(bit);
            os << "\n";
        }
    }
    return os.str();
}

NonTrivCert parse_cert(const std::string& text) {
    NonTrivCert cert;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto bad = [&](const std::string& m) -> std::runtime_error {
        return std::runtime_error("cert line " + std::to_string(lineno) + ": " + m);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "vertex") {
            int id;
            std::string name;
            if (!(ls >> id >> name)) throw bad("vertex needs id and name");
            if (id != cert.vertex_count()) throw bad("vertex ids must be consecutive");
            cert.vertex_names.push_back(name);
            cert.tags.emplace_back();
            int t;
            while (ls >> t) cert.tags.back().push_back(t);
        } else if (tok == "edge" || tok == "leq") {
            int u, v;
            if (!(ls >> u >> v)) throw bad("needs two vertex ids");
            (tok == "edge" ? cert.edges : cert.rel).emplace_back(u, v);
        } else if (tok == "clique") {
            size_t k;
            if (!(ls >> k)) throw bad("clique needs an index");
            if (k != cert.cliques.size()) throw bad("clique indices must be consecutive");
            cert.cliques.emplace_back();
            int m;
            while (ls >> m) cert.cliques.back().members.push_back(m);
        } else if (tok == "eq") {
            size_t k;
            std::string shape;
            if (!(ls >> k >> shape) || k >= cert.cliques.size()) throw bad("bad eq record");
            CertEq e;
            if (shape == "join") e.shape = CertEq::Shape::Join;
            else if (shape == "meet") e.shape = CertEq::Shape::Meet;
            else if (shape == "neg") e.shape = CertEq::Shape::Neg;
            else if (shape == "one") e.shape = CertEq::Shape::One;
            else if (shape == "zero") e.shape = CertEq::Shape::Zero;
            else if (shape == "same") e.shape = CertEq::Shape::Same;
            else throw bad("unknown equation shape '" + shape + "'");
            if (!(ls >> e.x)) throw bad("eq needs vertices");
            if (e.shape == CertEq::Shape::Join || e.shape == CertEq::Shape::Meet) {
                if (!(ls >> e.y >> e.z)) throw bad("eq needs three vertices");
            } else if (e.shape == CertEq::Shape::Neg || e.shape == CertEq::Shape::Same) {
                if (!(ls >> e.y)) throw bad("eq needs two vertices");
            }
            cert.cliques[k].eqs.push_back(e);
        } else if (tok == "sep") {
            size_t k;
            CertSep s;
            if (!(ls >> k >> s.a >> s.b) || k >= cert.cliques.size()) throw bad("bad sep record");
            int bit;
            while (ls >> bit) s.nu.push_back(static_cast<char>(bit));
            cert.cliques[k].seps.push_back(std::move(s));
        } else {
            throw bad("unknown record '" + tok + "'");
        }
    }
    return cert;
}

// ---- All-SAT ------------------------------------------------------------

AllsatOutcome allsat(const FormulaPtr& f, long long budget) {
    AllsatOutcome out;

    // Classical short-circuit over 2.
    auto model = sat_classical(cnf_clauses(tseitin(f)));
    if (model) {
        FinitePBA two = pba_two();
        std::map<std::string, int> alpha;
        for (const auto& v : formula_vars(f)) {
            auto it = model->find(v);
            alpha[v] = (it != model->end() && it->second) ? two.one() : two.zero();
        }
        out.status = SearchStatus::Found;
        out.cert = cert_from_witness(two, alpha, f);
        return out;
    }

    // Minimal-obligation certificate on Sub(f): one vertex per distinct
    // subformula plus distinguished 0/1 vertices; per-connective cliques.
    auto subs = subformulas(f);
    int ns = static_cast<int>(subs.size());
    int vz = ns, vo = ns + 1, n = ns + 2;
    std::map<std::string, int> sub_index;
    for (int i = 0; i < ns; ++i) sub_index[print_formula(subs[i])] = i;
    auto child = [&](const FormulaPtr& g) { return sub_index.at(print_formula(g)); };

    std::vector<std::vector<int>> raw;
    raw.push_back({ns - 1, vz, vo});
    for (int i = 0; i < ns; ++i) {
        const auto& s = subs[i];
        if (s->kind == Kind::Not)
            raw.push_back({i, child(s->lhs), vz, vo});
        else if (s->kind == Kind::Or || s->kind == Kind::And)
            raw.push_back({i, child(s->lhs), child(s->rhs), vz, vo});
    }
    std::vector<std::vector<int>> members;
    for (auto c : raw) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (std::find(members.begin(), members.end(), c) == members.end())
            members.push_back(std::move(c));
    }

    NonTrivCert cert;
    cert.vertex_names.reserve(n);
    cert.tags.resize(n);
    for (int i = 0; i < ns; ++i) {
        cert.vertex_names.push_back("s" + std::to_string(i));
        cert.tags[i] = {i};
    }
    cert.vertex_names.push_back("zero");
    cert.vertex_names.push_back("one");

    // Forced equations per clique, and respecting valuations.
    std::vector<CertClique> cliques;
    std::vector<std::vector<std::vector<char>>> valuations;  // per clique
    long long nodes = 0;
    for (const auto& c : members) {
        CertClique cc;
        cc.members = c;
        std::vector<int> pos(n, -1);
        for (size_t i = 0; i < c.size(); ++i) pos[c[i]] = static_cast<int>(i);
        auto inside = [&](std::initializer_list<int> vs) {
            for (int v : vs)
                if (pos[v] < 0) return false;
            return true;
        };
        cc.eqs.push_back({CertEq::Shape::Zero, vz});
        cc.eqs.push_back({CertEq::Shape::One, vo});
        if (pos[ns - 1] >= 0) cc.eqs.push_back({CertEq::Shape::One, ns - 1});
        for (int i = 0; i < ns; ++i) {
            const auto& s = subs[i];
            if (s->kind == Kind::Top && inside({i}))
                cc.eqs.push_back({CertEq::Shape::One, i});
            else if (s->kind == Kind::Not && inside({i, child(s->lhs)}))
                cc.eqs.push_back({CertEq::Shape::Neg, i, child(s->lhs)});
            else if ((s->kind == Kind::Or || s->kind == Kind::And) &&
                     inside({i, child(s->lhs), child(s->rhs)}))
                cc.eqs.push_back({s->kind == Kind::Or ? CertEq::Shape::Join : CertEq::Shape::Meet,
                                  i, child(s->lhs), child(s->rhs)});
        }
        std::sort(cc.eqs.begin(), cc.eqs.end());
        cc.eqs.erase(std::unique(cc.eqs.begin(), cc.eqs.end()), cc.eqs.end());

        size_t k = c.size();
        std::vector<std::vector<char>> vals;
        for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
            if (++nodes > budget) {
                out.status = SearchStatus::BudgetExceeded;
                return out;
            }
            std::vector<char> nu(k);
            for (size_t i = 0; i < k; ++i) nu[i] = (mask >> i) & 1;
            bool ok = true;
            for (const auto& e : cc.eqs)
                if (!eq_respected(e, pos, nu)) {
                    ok = false;
                    break;
                }
            if (ok) vals.push_back(std::move(nu));
        }
        if (vals.empty()) {
            out.status = SearchStatus::No;  // some context is two-inconsistent
            return out;
        }
        cliques.push_back(std::move(cc));
        valuations.push_back(std::move(vals));
    }

    // A vertex on which every remaining valuation of some context agrees is
    // an element equal to 0 or 1 outright, a fact every other context sharing
    // the vertex must respect.  Iterate to a fixpoint; an emptied context
    // refutes the formula.
    {
        std::vector<int> forced(n, -1);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t ci = 0; ci < cliques.size(); ++ci) {
                const auto& c = cliques[ci].members;
                auto& vals = valuations[ci];
                vals.erase(std::remove_if(vals.begin(), vals.end(),
                                          [&](const std::vector<char>& nu) {
                                              for (size_t i = 0; i < c.size(); ++i)
                                                  if (forced[c[i]] >= 0 && nu[i] != forced[c[i]])
                                                      return true;
                                              return false;
                                          }),
                           vals.end());
                if (vals.empty()) {
                    out.status = SearchStatus::No;
                    return out;
                }
                for (size_t i = 0; i < c.size(); ++i) {
                    if (forced[c[i]] >= 0) continue;
                    char v0 = vals.front()[i];
                    bool agree = std::all_of(vals.begin(), vals.end(),
                                             [&](const std::vector<char>& nu) { return nu[i] == v0; });
                    if (agree) {
                        forced[c[i]] = v0;
                        changed = true;
                    }
                }
            }
        }
    }

    // Claim a <= b when some shared clique forces it in every valuation.
    std::set<std::pair<int, int>> rel;
    for (size_t ci = 0; ci < cliques.size(); ++ci) {
        const auto& c = cliques[ci].members;
        std::vector<int> pos(n, -1);
        for (size_t i = 0; i < c.size(); ++i) pos[c[i]] = static_cast<int>(i);
        for (int u : c)
            for (int v : c) {
                if (u == v) continue;
                bool forced = true;
                for (const auto& nu : valuations[ci])
                    if (nu[pos[u]] > nu[pos[v]]) {
                        forced = false;
                        break;
                    }
                if (forced) rel.insert({u, v});
            }
    }
    cert.rel.assign(rel.begin(), rel.end());

    // Separators for every unclaimed pair, edges from clique membership.
    std::set<std::pair<int, int>> edges;
    for (size_t ci = 0; ci < cliques.size(); ++ci) {
        auto& cc = cliques[ci];
        const auto& c = cc.members;
        std::vector<int> pos(n, -1);
        for (size_t i = 0; i < c.size(); ++i) pos[c[i]] = static_cast<int>(i);
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = i + 1; j < c.size(); ++j)
                edges.insert({c[i], c[j]});
        for (int u : c)
            for (int v : c) {
                if (u == v || rel.count({u, v})) continue;
                const std::vector<char>* pick = nullptr;
                for (const auto& nu : valuations[ci])
                    if (nu[pos[u]] == 1 && nu[pos[v]] == 0) {
                        pick = &nu;
                        break;
                    }
                if (!pick) throw std::logic_error("allsat: unclaimed pair without separator");
                cc.seps.push_back({u, v, *pick});
            }
    }
    cert.edges.assign(edges.begin(), edges.end());
    cert.cliques = std::move(cliques);

    out.status = SearchStatus::Found;
    out.cert = std::move(cert);
    return out;
}

}  // namespace pbsat

#include "pbsat/qhom.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pbsat {

// ---- structures ----------------------------------------------------------

int Structure::index_of(const std::string& label) const {
    for (size_t i = 0; i < universe.size(); ++i)
        if (universe[i] == label) return static_cast<int>(i);
    return -1;
}

const Relation* Structure::relation(const std::string& name) const {
    for (const auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

bool Structure::has_tuple(const Relation& r, const std::vector<int>& t) const {
    return std::find(r.tuples.begin(), r.tuples.end(), t) != r.tuples.end();
}

Structure parse_structure(const std::string& text) {
    Structure s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            throw std::runtime_error("structure line " + std::to_string(lineno) + ": " + msg);
        };
        if (tok == "rel") {
            std::string name;
            int arity;
            if (!(ls >> name >> arity) || arity < 1) fail("rel needs a name and a positive arity");
            if (s.relation(name)) fail("duplicate relation '" + name + "'");
            s.relations.push_back({name, arity, {}});
        } else if (tok == "elem") {
            std::string label;
            if (!(ls >> label)) fail("elem needs a label");
            if (s.index_of(label) >= 0) fail("duplicate element '" + label + "'");
            s.universe.push_back(label);
        } else if (tok == "tuple") {
            std::string name;
            if (!(ls >> name)) fail("tuple needs a relation name");
            Relation* r = nullptr;
            for (auto& rr : s.relations)
                if (rr.name == name) r = &rr;
            if (!r) fail("unknown relation '" + name + "'");
            std::vector<int> t;
            std::string label;
            while (ls >> label) {
                int i = s.index_of(label);
                if (i < 0) fail("unknown element '" + label + "'");
                t.push_back(i);
            }
            if (static_cast<int>(t.size()) != r->arity)
                fail("tuple arity mismatch for '" + name + "'");
            r->tuples.push_back(std::move(t));
        } else {
            fail("unknown record '" + tok + "'");
        }
    }
    if (s.universe.empty()) throw std::runtime_error("structure: empty universe");
    return s;
}

std::string print_structure(const Structure& s) {
    std::ostringstream os;
    os << "# " << kVersionString << "\n";
    for (const auto& r : s.relations) os << "rel " << r.name << ' ' << r.arity << "\n";
    for (const auto& e : s.universe) os << "elem " << e << "\n";
    for (const auto& r : s.relations)
        for (const auto& t : r.tuples) {
            os << "tuple " << r.name;
            for (int i : t) os << ' ' << s.universe[i];
            os << "\n";
        }
    return os.str();
}

bool same_signature(const Structure& a, const Structure& b) {
    if (a.relations.size() != b.relations.size()) return false;
    for (const auto& r : a.relations) {
        const Relation* o = b.relation(r.name);
        if (!o || o->arity != r.arity) return false;
    }
    return true;
}

// ---- verify_qhom ---------------------------------------------------------

namespace {

// All arity-length tuples over [0, n), lexicographic.
std::vector<std::vector<int>> all_tuples(int n, int arity) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(arity, 0);
    while (true) {
        out.push_back(t);
        int k = arity - 1;
        while (k >= 0 && ++t[k] == n) t[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

}  // namespace

QHomCheck verify_qhom(const Structure& m, const Structure& n, const QHomFamily& f, int d,
                      double eps) {
    if (!same_signature(m, n)) return {false, "signature mismatch between the structures"};
    ProjectorOpsC ops(d, eps);

    int msize = static_cast<int>(m.universe.size());
    int nsize = static_cast<int>(n.universe.size());
    auto entry = [&](int mi, int ni) -> const MatC& {
        auto it = f.find({mi, ni});
        if (it == f.end())
            throw std::invalid_argument("verify_qhom: missing family entry (" +
                                        m.universe[mi] + ", " + n.universe[ni] + ")");
        return it->second;
    };

    for (int mi = 0; mi < msize; ++mi)
        for (int ni = 0; ni < nsize; ++ni)
            if (!ops.is_projector(entry(mi, ni)))
                return {false, "family entry (" + m.universe[mi] + ", " + n.universe[ni] +
                                   ") is not a projector"};

    // QH1: row sums.
    for (int mi = 0; mi < msize; ++mi) {
        MatC sum = ops.zero();
        for (int ni = 0; ni < nsize; ++ni) sum += entry(mi, ni);
        if (!ops.equal(sum, ops.one()))
            return {false, "QH1: row of " + m.universe[mi] + " does not sum to the identity"};
    }

    // QH2: commutation whenever m, m' co-occur in a tuple of M.
    std::set<std::pair<int, int>> cooccur;
    for (const auto& r : m.relations)
        for (const auto& t : r.tuples)
            for (int a : t)
                for (int b : t) cooccur.insert({a, b});
    for (auto [a, b] : cooccur)
        for (int na = 0; na < nsize; ++na)
            for (int nb = 0; nb < nsize; ++nb)
                if (!ops.comm(entry(a, na), entry(b, nb)))
                    return {false, "QH2: (" + m.universe[a] + ", " + n.universe[na] +
                                       ") does not commute with (" + m.universe[b] + ", " +
                                       n.universe[nb] + ")"};

    // QH3: zero products on (relation tuple, non-relation tuple) pairs.
    for (const auto& r : m.relations) {
        const Relation* rn = n.relation(r.name);
        for (const auto& t : r.tuples)
            for (const auto& s : all_tuples(nsize, r.arity)) {
                if (n.has_tuple(*rn, s)) continue;
                MatC prod = ops.one();
                for (int k = 0; k < r.arity; ++k) prod = prod * entry(t[k], s[k]);
                if (!ops.equal(prod, ops.zero())) {
                    std::ostringstream os;
                    os << "QH3: nonzero product for relation " << r.name << " on (";
                    for (int k = 0; k < r.arity; ++k)
                        os << (k ? "," : "") << m.universe[t[k]];
                    os << ") vs (";
                    for (int k = 0; k < r.arity; ++k)
                        os << (k ? "," : "") << n.universe[s[k]];
                    os << ")";
                    return {false, os.str()};
                }
            }
    }
    return {true, ""};
}

QHomFamily indicator_lift(const Structure& m, const Structure& n,
                          const std::vector<int>& h, int d) {
    if (h.size() != m.universe.size())
        throw std::invalid_argument("indicator_lift: map size mismatch");
    QHomFamily f;
    for (int mi = 0; mi < static_cast<int>(m.universe.size()); ++mi)
        for (int ni = 0; ni < static_cast<int>(n.universe.size()); ++ni)
            f[{mi, ni}] = h[mi] == ni ? MatC(MatC::Identity(d, d)) : MatC(MatC::Zero(d, d));
    return f;
}

// ---- hom_formula ---------------------------------------------------------

namespace {

std::string sanitize(const std::string& label) {
    std::string s;
    for (char c : label)
        s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    return s;
}

}  // namespace

std::string hom_variable(const Structure& m, const Structure& n, int mi, int ni) {
    return "p_" + sanitize(m.universe[mi]) + "_" + sanitize(n.universe[ni]);
}

FormulaPtr hom_formula(const Structure& m, const Structure& n) {
    if (!same_signature(m, n))
        throw std::invalid_argument("hom_formula: signature mismatch");
    int msize = static_cast<int>(m.universe.size());
    int nsize = static_cast<int>(n.universe.size());
    auto p = [&](int mi, int ni) { return Formula::var(hom_variable(m, n, mi, ni)); };

    std::vector<FormulaPtr> conjuncts;
    // phi_func: every m maps to exactly one n.
    for (int mi = 0; mi < msize; ++mi) {
        std::vector<FormulaPtr> options;
        for (int ni = 0; ni < nsize; ++ni) {
            FormulaPtr opt = p(mi, ni);
            for (int no = 0; no < nsize; ++no)
                if (no != ni) opt = Formula::conj(opt, Formula::neg(p(mi, no)));
            options.push_back(opt);
        }
        conjuncts.push_back(disj_all(options));
    }
    // phi_rel: no relation tuple lands on a non-tuple.
    for (const auto& r : m.relations) {
        const Relation* rn = n.relation(r.name);
        for (const auto& t : r.tuples) {
            std::vector<int> s(r.arity, 0);
            while (true) {
                if (!n.has_tuple(*rn, s)) {
                    std::vector<FormulaPtr> lits;
                    for (int k = 0; k < r.arity; ++k) lits.push_back(p(t[k], s[k]));
                    conjuncts.push_back(Formula::neg(conj_all(lits)));
                }
                int k = r.arity - 1;
                while (k >= 0 && ++s[k] == nsize) s[k--] = 0;
                if (k < 0) break;
            }
        }
    }
    return conj_all(conjuncts);
}

// ---- 3CNF to structures --------------------------------------------------

std::pair<Structure, Structure> cnf_to_structures(const FormulaPtr& cnf) {
    auto clauses = cnf_clauses(cnf);
    Structure v, t;
    v.universe = formula_vars(cnf);
    if (v.universe.empty())
        throw std::invalid_argument("cnf_to_structures: formula has no variables");
    t.universe = {"0", "1"};

    int k = 0;
    for (const auto& c : clauses) {
        ++k;
        if (c.empty() || c.size() > 3)
            throw std::invalid_argument("cnf_to_structures: clause " + std::to_string(k) +
                                        " must have one to three literals");
        std::string name = "R_c" + std::to_string(k);
        int arity = static_cast<int>(c.size());

        Relation rv{name, arity, {}};
        std::vector<int> scope, excluded;
        for (const auto& lit : c) {
            scope.push_back(v.index_of(lit.var));
            excluded.push_back(lit.positive ? 0 : 1);
        }
        rv.tuples.push_back(scope);
        v.relations.push_back(rv);

        Relation rt{name, arity, {}};
        std::vector<int> s(arity, 0);
        while (true) {
            if (s != excluded) rt.tuples.push_back(s);
            int i = arity - 1;
            while (i >= 0 && ++s[i] == 2) s[i--] = 0;
            if (i < 0) break;
        }
        t.relations.push_back(rt);
    }
    return {v, t};
}

// ---- Q_d relation checks -------------------------------------------------

QHomCheck qd_related(const std::vector<Pvm>& h,
                     const std::vector<std::vector<std::string>>& allowed, int d, double eps) {
    ProjectorOpsC ops(d, eps);
    int arity = static_cast<int>(h.size());
    if (arity == 0) return {false, "empty tuple of maps"};

    for (int i = 0; i < arity; ++i) {
        MatC sum = ops.zero();
        for (const auto& [label, mat] : h[i]) {
            if (!ops.is_projector(mat))
                return {false, "component " + std::to_string(i + 1) + " value at '" + label +
                                   "' is not a projector"};
            sum += mat;
        }
        if (!ops.equal(sum, ops.one()))
            return {false, "component " + std::to_string(i + 1) +
                               " does not sum to the identity"};
    }

    // QR1: values of distinct components pairwise commute.
    for (int i = 0; i < arity; ++i)
        for (int j = i + 1; j < arity; ++j)
            for (const auto& [la, a] : h[i])
                for (const auto& [lb, b] : h[j])
                    if (!ops.comm(a, b))
                        return {false, "QR1: component " + std::to_string(i + 1) + " at '" + la +
                                           "' does not commute with component " +
                                           std::to_string(j + 1) + " at '" + lb + "'"};

    // QR2: zero products on supported label tuples outside the relation.
    std::set<std::vector<std::string>> allow(allowed.begin(), allowed.end());
    std::vector<Pvm::const_iterator> its;
    for (const auto& m : h) {
        if (m.empty()) return {false, "a component has empty support"};
        its.push_back(m.begin());
    }
    while (true) {
        std::vector<std::string> labels;
        for (const auto& it : its) labels.push_back(it->first);
        if (!allow.count(labels)) {
            MatC prod = ops.one();
            for (const auto& it : its) prod = prod * it->second;
            if (!ops.equal(prod, ops.zero())) {
                std::string tup;
                for (const auto& l : labels) tup += (tup.empty() ? "" : ",") + l;
                return {false, "QR2: nonzero product on non-tuple (" + tup + ")"};
            }
        }
        int k = arity - 1;
        while (k >= 0) {
            if (++its[k] != h[k].end()) break;
            its[k] = h[k].begin();
            --k;
        }
        if (k < 0) break;
    }
    return {true, ""};
}

}  // namespace pbsat

#include "pbsat/gadgets.hpp"

#include "pbsat/solver.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pbsat {

// ---- vector sets ---------------------------------------------------------

int VectorSet::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

VectorSet parse_vector_set(const std::string& text) {
    VectorSet s;
    // Scalar duplicates collapse onto the first representative; later names
    // become aliases usable in basis declarations.
    std::map<std::string, int> alias;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            throw std::runtime_error("vector line " + std::to_string(lineno) + ": " + msg);
        };
        if (tok == "vec") {
            std::string name, xs, ys, zs;
            if (!(ls >> name >> xs >> ys >> zs)) fail("vec needs a name and three rationals");
            if (alias.count(name)) fail("duplicate vector name '" + name + "'");
            Vec3Q v;
            v(0) = parse_rational(xs), v(1) = parse_rational(ys), v(2) = parse_rational(zs);
            ProjLine l(v);
            int idx = -1;
            for (size_t i = 0; i < s.lines.size(); ++i)
                if (s.lines[i] == l) { idx = static_cast<int>(i); break; }
            if (idx < 0) {
                idx = static_cast<int>(s.lines.size());
                s.names.push_back(name);
                s.lines.push_back(l);
            }
            alias[name] = idx;
        } else if (tok == "basis") {
            std::array<int, 3> b;
            for (int k = 0; k < 3; ++k) {
                std::string n;
                if (!(ls >> n)) fail("basis needs three names");
                auto it = alias.find(n);
                if (it == alias.end()) fail("unknown vector '" + n + "'");
                b[k] = it->second;
            }
            s.bases.push_back(b);
        } else {
            fail("unknown record '" + tok + "'");
        }
    }
    return s;
}

std::string print_vector_set(const VectorSet& s) {
    std::ostringstream os;
    os << "# " << kVersionString << "\n";
    for (size_t i = 0; i < s.lines.size(); ++i) {
        const Vec3Q& v = s.lines[i].rep();
        os << "vec " << s.names[i];
        for (int k = 0; k < 3; ++k) {
            os << ' ' << v(k).numerator();
            if (v(k).denominator() != 1) os << '/' << v(k).denominator();
        }
        os << "\n";
    }
    for (const auto& b : s.bases)
        os << "basis " << s.names[b[0]] << ' ' << s.names[b[1]] << ' ' << s.names[b[2]] << "\n";
    return os.str();
}

Graph orthogonality_graph(const VectorSet& s) {
    Graph g;
    for (const auto& n : s.names) g.add_vertex(n);
    for (size_t i = 0; i < s.lines.size(); ++i)
        for (size_t j = i + 1; j < s.lines.size(); ++j)
            if (lines_orthogonal(s.lines[i], s.lines[j]))
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

bool is_basis_complete(const VectorSet& s) {
    int n = static_cast<int>(s.lines.size());
    if (n == 0) return false;
    auto orth = [&](int i, int j) { return lines_orthogonal(s.lines[i], s.lines[j]); };
    for (const auto& b : s.bases)
        if (!orth(b[0], b[1]) || !orth(b[0], b[2]) || !orth(b[1], b[2])) return false;
    std::vector<char> covered(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!orth(i, j)) continue;
            for (int k = j + 1; k < n; ++k)
                if (orth(i, k) && orth(j, k)) covered[i] = covered[j] = covered[k] = 1;
        }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

// ---- graph formulas ------------------------------------------------------

namespace {

std::string sanitize_label(const std::string& label) {
    std::string s = "p_";
    for (char c : label)
        s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    return s;
}

// Sanitization can merge distinct labels; later vertices get a
// deterministic index suffix.
std::vector<std::string> graph_variables(const Graph& g) {
    std::vector<std::string> var(g.size());
    std::set<std::string> seen;
    for (int v = 0; v < g.size(); ++v) {
        std::string s = sanitize_label(g.label(v));
        if (!seen.insert(s).second) s += "_" + std::to_string(v);
        var[v] = s;
    }
    return var;
}

}  // namespace

std::string graph_variable(const Graph& g, int v) {
    std::string s = sanitize_label(g.label(v));
    for (int u = 0; u < v; ++u)
        if (sanitize_label(g.label(u)) == s) return s + "_" + std::to_string(v);
    return s;
}

FormulaPtr formula_of_graph(const Graph& g) {
    if (g.size() == 0) throw std::invalid_argument("formula_of_graph: empty graph");
    std::vector<std::string> var = graph_variables(g);

    std::vector<FormulaPtr> conjuncts;
    auto es = g.edges();
    if (es.empty()) {
        conjuncts.push_back(Formula::top());
    } else {
        for (auto [u, v] : es)
            conjuncts.push_back(
                Formula::neg(Formula::conj(Formula::var(var[u]), Formula::var(var[v]))));
    }
    for (const auto& c : maximum_cliques(g)) {
        std::vector<FormulaPtr> lits;
        for (int v : c) lits.push_back(Formula::var(var[v]));
        conjuncts.push_back(disj_all(lits));
    }
    return conj_all(conjuncts);
}

FormulaPtr basis_d(int d) {
    if (d < 1) throw std::invalid_argument("basis_d: d must be positive");
    return formula_of_graph(Graph::complete(d));
}

// ---- colourings ----------------------------------------------------------

std::optional<std::vector<char>> find_nc_colouring(const Graph& g, bool clique_only) {
    std::vector<Clause> clauses;
    auto lit = [&](int v, bool pos) { return Lit{"v" + std::to_string(v), pos}; };
    if (!clique_only)
        for (auto [u, v] : g.edges()) clauses.push_back({lit(u, false), lit(v, false)});
    for (const auto& c : maximum_cliques(g)) {
        Clause at_least_one;
        for (int v : c) at_least_one.push_back(lit(v, true));
        clauses.push_back(at_least_one);
        // Exactly one 1 per maximum clique; edges only give at-most-one for
        // adjacent pairs, which suffices when C1 is active, but the
        // clique-only variant needs it explicitly.
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = i + 1; j < c.size(); ++j)
                clauses.push_back({lit(c[i], false), lit(c[j], false)});
    }
    auto model = sat_classical(clauses);
    if (!model) return std::nullopt;
    std::vector<char> colouring(g.size(), 0);
    for (int v = 0; v < g.size(); ++v) {
        auto it = model->find("v" + std::to_string(v));
        colouring[v] = (it != model->end() && it->second) ? 1 : 0;
    }
    return colouring;
}

std::vector<MatQ> canonical_assignment(const VectorSet& s) {
    std::vector<MatQ> out;
    out.reserve(s.lines.size());
    for (const auto& l : s.lines) out.push_back(l.projector());
    return out;
}

std::pair<ProjLine, ProjLine> plane_basis(const ProjLine& v) {
    Vec3Q axis;
    for (int i = 0; i < 3; ++i) {
        axis = Vec3Q::Zero();
        axis(i) = Rat(1);
        Vec3Q c = cross(v.rep(), axis);
        if (c(0) != Rat(0) || c(1) != Rat(0) || c(2) != Rat(0))
            return {ProjLine(c), ProjLine(cross(v.rep(), c))};
    }
    throw std::logic_error("plane_basis: unreachable for a nonzero line");
}

// ---- products and CKE ----------------------------------------------------

Graph product(const Graph& g, const Graph& h) {
    Graph out;
    for (int u = 0; u < g.size(); ++u)
        for (int x = 0; x < h.size(); ++x)
            out.add_vertex("(" + g.label(u) + "," + h.label(x) + ")");
    auto id = [&](int u, int x) { return u * h.size() + x; };
    for (int u = 0; u < g.size(); ++u)
        for (int v = 0; v < g.size(); ++v) {
            if (!g.adjacent(u, v)) continue;
            for (int x = 0; x < h.size(); ++x)
                for (int y = x + 1; y < h.size(); ++y)
                    if (h.adjacent(x, y)) {
                        out.add_edge(id(u, x), id(v, y));
                        out.add_edge(id(u, y), id(v, x));
                    }
        }
    return out;
}

Graph cons_graph() {
    Graph g;
    int w = g.add_vertex("w"), w2 = g.add_vertex("w2");
    int x = g.add_vertex("x"), x2 = g.add_vertex("x2");
    g.add_edge(x, x2);
    g.add_edge(x, w), g.add_edge(x2, w);
    g.add_edge(x, w2), g.add_edge(x2, w2);
    return g;
}

Graph cke(const Graph& g, const VectorSet& ks) {
    if (!is_facet(g, 3)) throw std::invalid_argument("cke: graph must be facet with omega = 3");
    if (!is_basis_complete(ks)) throw std::invalid_argument("cke: vector set must be basis-complete");
    Graph out = product(g, orthogonality_graph(ks));
    int n = static_cast<int>(ks.lines.size());
    auto id = [&](int w, int u) { return w * n + u; };
    for (int w = 0; w < g.size(); ++w)
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                std::string base =
                    "cons(" + g.label(w) + "," + ks.names[u] + "," + ks.names[v] + ")";
                int x = out.add_vertex(base + ":a");
                int x2 = out.add_vertex(base + ":b");
                out.add_edge(x, x2);
                out.add_edge(x, id(w, u)), out.add_edge(x2, id(w, u));
                out.add_edge(x, id(w, v)), out.add_edge(x2, id(w, v));
            }
    return out;
}

// ---- cross-product terms -------------------------------------------------

CrossTermPtr CrossTerm::var(const std::string& name) {
    auto t = std::make_shared<CrossTerm>();
    t->is_var = true;
    t->name = name;
    return t;
}

CrossTermPtr CrossTerm::cross(CrossTermPtr l, CrossTermPtr r) {
    auto t = std::make_shared<CrossTerm>();
    t->is_var = false;
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
}

namespace {

struct TermParser {
    std::vector<std::string> toks;
    size_t pos = 0;

    explicit TermParser(const std::string& text) {
        size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            if (c == '(' || c == ')' || c == ',') {
                toks.emplace_back(1, c);
                ++i;
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                size_t j = i;
                while (j < text.size() &&
                       (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                    ++j;
                toks.push_back(text.substr(i, j - i));
                i = j;
            } else {
                throw std::runtime_error("cross term: unexpected character '" +
                                         std::string(1, c) + "'");
            }
        }
    }

    bool peek(const std::string& t) const { return pos < toks.size() && toks[pos] == t; }
    void expect(const std::string& t) {
        if (!peek(t))
            throw std::runtime_error("cross term: expected '" + t + "'");
        ++pos;
    }

    CrossTermPtr term() {
        CrossTermPtr t = factor();
        while (peek("x")) {
            ++pos;
            t = CrossTerm::cross(t, factor());
        }
        return t;
    }

    CrossTermPtr factor() {
        if (peek("(")) {
            ++pos;
            CrossTermPtr t = term();
            expect(")");
            return t;
        }
        if (pos >= toks.size())
            throw std::runtime_error("cross term: unexpected end of input");
        std::string tok = toks[pos++];
        if (tok == "cross") {
            expect("(");
            CrossTermPtr l = term();
            expect(",");
            CrossTermPtr r = term();
            expect(")");
            return CrossTerm::cross(std::move(l), std::move(r));
        }
        if (tok == "x" || tok == ")" || tok == "," || tok == "(")
            throw std::runtime_error("cross term: unexpected token '" + tok + "'");
        return CrossTerm::var(tok);
    }
};

}  // namespace

CrossTermPtr parse_cross_term(const std::string& text) {
    TermParser p(text);
    CrossTermPtr t = p.term();
    if (p.pos != p.toks.size())
        throw std::runtime_error("cross term: trailing input");
    return t;
}

std::string print_cross_term(const CrossTermPtr& t) {
    if (t->is_var) return t->name;
    return "(" + print_cross_term(t->left) + " x " + print_cross_term(t->right) + ")";
}

std::string cross_term_label(const CrossTermPtr& t) {
    if (t->is_var) return t->name;
    return "cross(" + cross_term_label(t->left) + "," + cross_term_label(t->right) + ")";
}

namespace {

void collect_subterms(const CrossTermPtr& t, std::vector<CrossTermPtr>& out,
                      std::set<std::string>& seen) {
    if (!t->is_var) {
        collect_subterms(t->left, out, seen);
        collect_subterms(t->right, out, seen);
    }
    if (seen.insert(cross_term_label(t)).second) out.push_back(t);
}

}  // namespace

std::vector<CrossTermPtr> cross_subterms(const CrossTermPtr& t) {
    std::vector<CrossTermPtr> out;
    std::set<std::string> seen;
    collect_subterms(t, out, seen);
    return out;
}

std::vector<std::string> cross_term_vars(const CrossTermPtr& t) {
    std::set<std::string> names;
    for (const auto& s : cross_subterms(t))
        if (s->is_var) names.insert(s->name);
    return {names.begin(), names.end()};
}

std::optional<ProjLine> eval_cross_term(const CrossTermPtr& t,
                                        const std::map<std::string, ProjLine>& lines) {
    if (t->is_var) {
        auto it = lines.find(t->name);
        if (it == lines.end())
            throw std::runtime_error("eval_cross_term: unassigned variable '" + t->name + "'");
        return it->second;
    }
    auto l = eval_cross_term(t->left, lines);
    if (!l) return std::nullopt;
    auto r = eval_cross_term(t->right, lines);
    if (!r) return std::nullopt;
    return line_cross(*l, *r);
}

bool xsat_satisfied(const CrossTermPtr& t, const std::map<std::string, ProjLine>& lines) {
    auto v = eval_cross_term(t, lines);
    auto it = lines.find("x1");
    if (it == lines.end()) throw std::runtime_error("xsat_satisfied: x1 is unassigned");
    return v.has_value() && *v == it->second;
}

Graph term_graph(const CrossTermPtr& t) {
    if (t->is_var)
        throw std::invalid_argument("term_graph: the root may not be a bare variable");
    auto subs = cross_subterms(t);
    bool has_x1 = false;
    for (const auto& s : subs)
        if (s->is_var && s->name == "x1") has_x1 = true;
    if (!has_x1) throw std::invalid_argument("term_graph: x1 does not occur in the term");

    // Vertices are the distinct subterms with the root merged into the x1
    // leaf; edges run between each cross node and its children.
    std::string root_label = cross_term_label(t);
    auto vertex_label = [&](const CrossTermPtr& s) {
        std::string l = cross_term_label(s);
        return l == root_label ? std::string("x1") : l;
    };
    Graph g;
    for (const auto& s : subs) {
        std::string l = vertex_label(s);
        if (g.index_of(l) < 0) g.add_vertex(l);
    }
    for (const auto& s : subs) {
        if (s->is_var) continue;
        int parent = g.index_of(vertex_label(s));
        // add_edge drops self-loops (root's edge to the x1 leaf itself).
        g.add_edge(parent, g.index_of(vertex_label(s->left)));
        g.add_edge(parent, g.index_of(vertex_label(s->right)));
    }

    // Triangle completion: one fresh vertex per pre-existing edge.
    auto es = g.edges();
    int k = 0;
    for (auto [u, v] : es) {
        int w = g.add_vertex("tri" + std::to_string(++k));
        g.add_edge(w, u);
        g.add_edge(w, v);
    }
    return g;
}

FormulaPtr theta(const CrossTermPtr& t, const VectorSet& ks) {
    return formula_of_graph(cke(term_graph(t), ks));
}

// ---- magic-square formulas -----------------------------------------------

FormulaPtr magic_formula_on(const std::array<std::string, 9>& vars) {
    auto v = [&](int i) { return Formula::var(vars[i]); };
    auto xor3 = [&](int i, int j, int k) {
        return Formula::xor_(Formula::xor_(v(i), v(j)), v(k));
    };
    // Rows and the first two columns multiply to the algebra's 0 (the
    // identity involution), the last column to 1 (minus the identity); the
    // corresponding parities are negated and positive respectively.
    std::vector<FormulaPtr> cs = {
        Formula::neg(xor3(0, 1, 2)), Formula::neg(xor3(3, 4, 5)), Formula::neg(xor3(6, 7, 8)),
        Formula::neg(xor3(0, 3, 6)), Formula::neg(xor3(1, 4, 7)), xor3(2, 5, 8),
    };
    return conj_all(cs);
}

FormulaPtr magic_formula() {
    return magic_formula_on({"a", "b", "c", "d", "e", "f", "g", "h", "i"});
}

FormulaPtr vartheta(const CrossTermPtr& t) {
    if (t->is_var)
        throw std::invalid_argument("vartheta: the root may not be a bare variable");
    auto subs = cross_subterms(t);

    // Keys: "one" for the constant, "v<name>" for variables, "s<k>" for
    // non-variable subterms by post-order position.
    std::map<std::string, std::string> key;
    int si = 0;
    for (const auto& s : subs) {
        std::string l = cross_term_label(s);
        key[l] = s->is_var ? "v" + s->name : "s" + std::to_string(++si);
    }
    std::string tkey = key[cross_term_label(t)];

    // The three term-satisfiability identifications p_{t,1} = p_{x1,1},
    // p_{t,t} = p_{x1,x1}, p_{1,t} = p_{1,x1}.
    std::map<std::string, std::string> rename = {
        {"p_" + tkey + "_one", "p_vx1_one"},
        {"p_" + tkey + "_" + tkey, "p_vx1_vx1"},
        {"p_one_" + tkey, "p_one_vx1"},
    };
    auto pvar = [&](const std::string& a, const std::string& b) {
        std::string n = "p_" + a + "_" + b;
        auto it = rename.find(n);
        return it == rename.end() ? n : it->second;
    };

    std::vector<FormulaPtr> copies;
    int rho = 0;
    for (const auto& s : subs) {
        if (s->is_var) continue;
        std::string skey = key[cross_term_label(s)];
        std::vector<std::string> children = {cross_term_label(s->left)};
        if (cross_term_label(s->right) != children[0]) children.push_back(cross_term_label(s->right));
        for (const auto& rl : children) {
            std::string rkey = key[rl];
            std::string w = "w" + std::to_string(++rho);
            copies.push_back(magic_formula_on({
                pvar(rkey, "one"), pvar("one", rkey), pvar(rkey, rkey),
                pvar("one", skey), pvar(skey, "one"), pvar(skey, skey),
                pvar(rkey, skey), pvar(skey, rkey), pvar(w, w),
            }));
        }
    }
    return conj_all(copies);
}

}  // namespace pbsat

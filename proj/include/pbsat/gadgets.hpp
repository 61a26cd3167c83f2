#ifndef PBSAT_GADGETS_HPP
#define PBSAT_GADGETS_HPP

#include "pbsat/formula.hpp"
#include "pbsat/graph.hpp"
#include "pbsat/projector.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pbsat {

// ---- vector sets ---------------------------------------------------------

// A finite set of lines in R^3 with exact rational coordinates, deduplicated
// up to scalar multiples.  File format:
//   # comment
//   vec <name> <x> <y> <z>      rationals p/q or integers
//   basis <name> <name> <name>  optional orthonormal-basis declarations
struct VectorSet {
    std::vector<std::string> names;           // one per representative
    std::vector<ProjLine> lines;
    std::vector<std::array<int, 3>> bases;    // declared bases, by index

    int index_of(const std::string& name) const;
};

VectorSet parse_vector_set(const std::string& text);
std::string print_vector_set(const VectorSet& s);

// Vertices are the representatives; edge iff the lines are orthogonal.
Graph orthogonality_graph(const VectorSet& s);

// True iff the set is a union of orthonormal bases: every line belongs to a
// mutually-orthogonal triple within the set (and any declared bases are in
// fact orthogonal triples).
bool is_basis_complete(const VectorSet& s);

// ---- graph formulas ------------------------------------------------------

// phi_G: AND over edges of ~(p_v & p_w), then AND over maximum cliques of
// the disjunction of their variables.  An edgeless graph contributes T for
// the edge part.  Variables are "p_" + sanitized vertex label.
FormulaPtr formula_of_graph(const Graph& g);

// basis_d = phi_{K_d} (variables p_v1 .. p_vd).
FormulaPtr basis_d(int d);

// The formula variable attached to vertex i of g by formula_of_graph.
std::string graph_variable(const Graph& g, int v);

// ---- colourings and orthogonal assignments -------------------------------

// Non-contextual colouring: at most one 1 per edge (C1), exactly one 1 per
// maximum clique (C2).  Searched with sat_classical on the direct CNF
// encoding; nullopt means no colouring exists.  With clique_only, the edge
// constraints C1 are dropped.
std::optional<std::vector<char>> find_nc_colouring(const Graph& g, bool clique_only = false);

// O1: f(v) f(w) = 0 on every edge; O2: the values over every maximum clique
// sum to the identity; every value must be a projector at dimension d.
template <typename M>
bool verify_orthogonal_assignment(const Graph& g, const std::vector<M>& f, int d,
                                  double eps = kDefaultEps) {
    if (static_cast<int>(f.size()) != g.size()) return false;
    ProjectorOps<M> ops(d, eps);
    for (const M& m : f)
        if (!ops.is_projector(m)) return false;
    for (auto [u, v] : g.edges())
        if (!ops.equal(ops.meet(f[u], f[v]), ops.zero())) return false;
    for (const auto& c : maximum_cliques(g)) {
        M sum = ops.zero();
        for (int v : c) sum += f[v];
        if (!ops.equal(sum, ops.one())) return false;
    }
    return true;
}

template <typename M>
bool is_ks_proof(const Graph& g, const std::vector<M>& f, int d, double eps = kDefaultEps) {
    return verify_orthogonal_assignment(g, f, d, eps) && !find_nc_colouring(g).has_value();
}

// The canonical rank-1 assignment of an orthogonality graph: each vertex
// gets the projector onto its line.
std::vector<MatQ> canonical_assignment(const VectorSet& s);

// Two lines spanning the plane orthogonal to v.
std::pair<ProjLine, ProjLine> plane_basis(const ProjLine& v);

// ---- products and the CKE construction -----------------------------------

// Categorical product: vertices V(G) x V(H) labelled "(g,h)"; (u,v)~(u',v')
// iff u~u' and v~v'.
Graph product(const Graph& g, const Graph& h);

// The consistency gadget on its own: w, w', x, x' with x,x' adjacent to each
// other and to both w and w'.
Graph cons_graph();

// CKE(G): the product G x G_ks plus one consistency gadget per vertex w of G
// and unordered pair of distinct lines u,v of ks — two fresh vertices
// adjacent to each other and to (w,u) and (w,v).  Requires is_facet(g, 3)
// and a basis-complete ks.
Graph cke(const Graph& g, const VectorSet& ks);

// ---- cross-product terms -------------------------------------------------

struct CrossTerm;
using CrossTermPtr = std::shared_ptr<const CrossTerm>;

// A term over the projective-plane cross product; the designated output
// variable is x1.
struct CrossTerm {
    bool is_var;
    std::string name;           // variables only
    CrossTermPtr left, right;   // cross nodes only

    static CrossTermPtr var(const std::string& name);
    static CrossTermPtr cross(CrossTermPtr l, CrossTermPtr r);
};

// Grammar:  term := factor ("x" factor)*   (left assoc)
//           factor := IDENT | "cross" "(" term "," term ")" | "(" term ")"
// The bare identifier "x" is the operator; variables are any other IDENT.
CrossTermPtr parse_cross_term(const std::string& text);
std::string print_cross_term(const CrossTermPtr& t);   // infix, fully bracketed
std::string cross_term_label(const CrossTermPtr& t);   // "cross(a,b)", no spaces

// Distinct subterms in post-order (structural identity, root last).
std::vector<CrossTermPtr> cross_subterms(const CrossTermPtr& t);
std::vector<std::string> cross_term_vars(const CrossTermPtr& t);

// Recursive evaluation over lines; nullopt when any cross is applied to two
// equal lines.  Missing variables throw.
std::optional<ProjLine> eval_cross_term(const CrossTermPtr& t,
                                        const std::map<std::string, ProjLine>& lines);

// The XSAT check: the term evaluates (defined) to the line assigned to x1.
bool xsat_satisfied(const CrossTermPtr& t, const std::map<std::string, ProjLine>& lines);

// The term graph G_t: parse tree with structurally identical subterms
// merged, the root identified with the x1 leaf (self-loops dropped),
// orientation forgotten, then triangle-completed with one fresh vertex per
// pre-existing edge.  Terms whose root is a bare variable are rejected, as
// are terms not containing x1.
Graph term_graph(const CrossTermPtr& t);

// theta_t = phi_{CKE(G_t)}.
FormulaPtr theta(const CrossTermPtr& t, const VectorSet& ks);

// ---- magic-square formulas -----------------------------------------------

// mu over the nine variables a..i: the three row parities and the first two
// column parities are negated XOR clauses, the last column is a positive
// XOR clause.  Classically unsatisfiable; strongly satisfied in I(C^4) by
// the standard magic table.
FormulaPtr magic_formula();

// The same six-clause scheme over an arbitrary row-major variable table.
FormulaPtr magic_formula_on(const std::array<std::string, 9>& vars);

// vartheta_t: one mu copy per pair rho = (s, r) with s a non-variable
// subterm and r an immediate child, over the shared variable table
//   p_{r,1}  p_{1,r}  p_{r,r}
//   p_{1,s}  p_{s,1}  p_{s,s}
//   p_{r,s}  p_{s,r}  p_{w,w}    (w fresh per copy)
// with p_{t,1}, p_{t,t}, p_{1,t} identified with p_{x1,1}, p_{x1,x1},
// p_{1,x1}.
FormulaPtr vartheta(const CrossTermPtr& t);

}  // namespace pbsat

#endif  // PBSAT_GADGETS_HPP

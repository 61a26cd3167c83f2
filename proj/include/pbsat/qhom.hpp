#ifndef PBSAT_QHOM_HPP
#define PBSAT_QHOM_HPP

#include "pbsat/formula.hpp"
#include "pbsat/projector.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pbsat {

// ---- relational structures -----------------------------------------------

// File format:
//   # comment
//   rel <name> <arity>
//   elem <label>
//   tuple <rel-name> <label>...
struct Relation {
    std::string name;
    int arity = 0;
    std::vector<std::vector<int>> tuples;  // element indices
};

struct Structure {
    std::vector<std::string> universe;
    std::vector<Relation> relations;

    int index_of(const std::string& label) const;
    const Relation* relation(const std::string& name) const;
    bool has_tuple(const Relation& r, const std::vector<int>& t) const;
};

Structure parse_structure(const std::string& text);
std::string print_structure(const Structure& s);

// Same relation names with the same arities, in any order.
bool same_signature(const Structure& a, const Structure& b);

// ---- quantum homomorphisms ----------------------------------------------

// F_{m,n} indexed by (element of M, element of N).
using QHomFamily = std::map<std::pair<int, int>, MatC>;

struct QHomCheck {
    bool ok = false;
    std::string reason;  // first violated condition on failure
};

// QH1: for every m the row sums to the identity.  QH2: commeasurability
// (commutation) between F_{m,n} and F_{m',n'} whenever m and m' co-occur in
// some relational tuple of M (including m = m').  QH3: for every relation
// R, tuple (m_1..m_r) in R^M and tuple (n_1..n_r) not in R^N, the product
// F_{m_1,n_1} ... F_{m_r,n_r} is zero.  All entries must be projectors.
QHomCheck verify_qhom(const Structure& m, const Structure& n, const QHomFamily& f, int d,
                      double eps = kDefaultEps);

// The classical indicator lift of a homomorphism h: F_{m,n} = I if
// h(m) = n, else 0 (d = 1 uses the scalars {0, 1}).
QHomFamily indicator_lift(const Structure& m, const Structure& n,
                          const std::vector<int>& h, int d);

// phi_{M,N} over the variables p_<m>_<n>:
//   AND_m OR_n ( p_{m,n} & AND_{n' != n} ~p_{m,n'} )
// conjoined with, per relation tuple of M and non-tuple of N,
//   ~( p_{m_1,n_1} & ... & p_{m_r,n_r} ).
FormulaPtr hom_formula(const Structure& m, const Structure& n);

// The variable for the pair (m, n) used by hom_formula.
std::string hom_variable(const Structure& m, const Structure& n, int mi, int ni);

// ---- 3CNF to structures --------------------------------------------------

// For a clausal formula phi with clauses of at most three literals, produce
// (V_phi, T_phi): V_phi has the variables of phi as universe and one
// relation R_c<k> per clause k holding the clause's variable tuple; T_phi
// has universe {0, 1} and interprets R_c<k> as all 0/1 tuples except
// (del(l_1), ..., del(l_r)) where del is 0 on positive and 1 on negative
// literals.  Throws on clauses that are empty or longer than three.
std::pair<Structure, Structure> cnf_to_structures(const FormulaPtr& cnf);

// ---- the Q_d relation checks --------------------------------------------

// A finitely supported projector-valued map, label -> projector.
using Pvm = std::map<std::string, MatC>;

// Membership check for a tuple (h_1, ..., h_r) of PVMs in the Q_d
// interpretation of a relation given by its allowed label tuples:
// every h_i must sum to the identity (QR0, the PVM condition), the values
// of distinct components must pairwise commute (QR1), and the product
// h_1(m_1) ... h_r(m_r) must vanish for every supported label tuple outside
// the relation (QR2).
QHomCheck qd_related(const std::vector<Pvm>& h,
                     const std::vector<std::vector<std::string>>& allowed, int d,
                     double eps = kDefaultEps);

}  // namespace pbsat

#endif  // PBSAT_QHOM_HPP

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pbsat/formula.hpp"

using namespace pbsat;

namespace {

// All 2^n classical assignments over the given variables.
std::vector<std::map<std::string, bool>> all_assignments(const std::vector<std::string>& vars) {
    std::vector<std::map<std::string, bool>> out;
    size_t n = vars.size();
    for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
        std::map<std::string, bool> a;
        for (size_t i = 0; i < n; ++i) a[vars[i]] = (mask >> i) & 1;
        out.push_back(std::move(a));
    }
    return out;
}

bool classically_sat(const FormulaPtr& f) {
    for (const auto& a : all_assignments(formula_vars(f)))
        if (eval_classical(f, a)) return true;
    return false;
}

}  // namespace

TEST_CASE("parse/print round-trips and desugaring") {
    CHECK(print_formula(parse_formula("p")) == "p");
    CHECK(print_formula(parse_formula("T")) == "T");
    CHECK(print_formula(parse_formula("~p")) == "~p");
    CHECK(print_formula(parse_formula("p & q | r")) == "p & q | r");
    CHECK(print_formula(parse_formula("p & (q | r)")) == "p & (q | r)");
    CHECK(print_formula(parse_formula("(p | q) & r")) == "(p | q) & r");
    CHECK(print_formula(parse_formula("~(p & q)")) == "~(p & q)");
    CHECK(print_formula(parse_formula("~~p")) == "~~p");

    // Derived connectives desugar into the core language.
    CHECK(print_formula(parse_formula("p -> q")) == "~p | q");
    CHECK(print_formula(parse_formula("p <-> q")) == "p & q | ~p & ~q");
    CHECK(print_formula(parse_formula("p ^ q")) == "p & ~q | ~p & q");

    // Idempotent printing.
    for (const char* s : {"p & q | r", "~(p | q) & ~r", "p | q | r & s"}) {
        auto f = parse_formula(s);
        CHECK(print_formula(parse_formula(print_formula(f))) == print_formula(f));
    }
}

TEST_CASE("parser associativity and precedence") {
    // '->' is right-associative: a -> b -> c == a -> (b -> c).
    CHECK(structurally_equal(parse_formula("a -> b -> c"),
                             parse_formula("a -> (b -> c)")));
    CHECK_FALSE(structurally_equal(parse_formula("a -> b -> c"),
                                   parse_formula("(a -> b) -> c")));

    // '<->' is left-associative: a <-> b <-> c == (a <-> b) <-> c.
    CHECK(structurally_equal(parse_formula("a <-> b <-> c"),
                             parse_formula("(a <-> b) <-> c")));

    // '^', '|', '&' are left-associative.
    CHECK(structurally_equal(parse_formula("a ^ b ^ c"), parse_formula("(a ^ b) ^ c")));
    CHECK(structurally_equal(parse_formula("a | b | c"), parse_formula("(a | b) | c")));
    CHECK(structurally_equal(parse_formula("a & b & c"), parse_formula("(a & b) & c")));

    // Precedence: ~ > & > | > ^ > -> > <->.
    CHECK(structurally_equal(parse_formula("a & b | c"), parse_formula("(a & b) | c")));
    CHECK(structurally_equal(parse_formula("a | b ^ c"), parse_formula("(a | b) ^ c")));
    CHECK(structurally_equal(parse_formula("a ^ b -> c"), parse_formula("(a ^ b) -> c")));
    CHECK(structurally_equal(parse_formula("a -> b <-> c"), parse_formula("(a -> b) <-> c")));
    CHECK(structurally_equal(parse_formula("~a & b"), parse_formula("(~a) & b")));

    // Mixed arrows: '<->' binds looser even on the right of '->'.
    CHECK(structurally_equal(parse_formula("a -> b <-> c"),
                             Formula::iff(Formula::implies(Formula::var("a"), Formula::var("b")),
                                          Formula::var("c"))));
}

TEST_CASE("parser errors") {
    CHECK_THROWS_AS(parse_formula(""), std::runtime_error);
    CHECK_THROWS_AS(parse_formula("p &"), std::runtime_error);
    CHECK_THROWS_AS(parse_formula("(p"), std::runtime_error);
    CHECK_THROWS_AS(parse_formula("p q"), std::runtime_error);
    CHECK_THROWS_AS(parse_formula("p & 1"), std::runtime_error);
    CHECK_THROWS_AS(Formula::var("T"), std::invalid_argument);
    CHECK_THROWS_AS(Formula::var("1p"), std::invalid_argument);
    CHECK_THROWS_AS(Formula::var("p-q"), std::invalid_argument);
}

TEST_CASE("eval_classical") {
    auto f = parse_formula("(p | q) & ~r");
    CHECK(eval_classical(f, {{"p", true}, {"q", false}, {"r", false}}));
    CHECK_FALSE(eval_classical(f, {{"p", true}, {"q", false}, {"r", true}}));
    CHECK_FALSE(eval_classical(f, {{"p", false}, {"q", false}, {"r", false}}));
    CHECK(eval_classical(Formula::top(), {}));
    CHECK_THROWS_AS(eval_classical(parse_formula("p"), {}), std::runtime_error);

    // Desugared connectives match their truth tables.
    for (bool p : {false, true})
        for (bool q : {false, true}) {
            std::map<std::string, bool> a{{"p", p}, {"q", q}};
            CHECK(eval_classical(parse_formula("p -> q"), a) == (!p || q));
            CHECK(eval_classical(parse_formula("p <-> q"), a) == (p == q));
            CHECK(eval_classical(parse_formula("p ^ q"), a) == (p != q));
        }
}

TEST_CASE("formula_vars and subformulas") {
    auto f = parse_formula("q & p | ~p");
    CHECK(formula_vars(f) == std::vector<std::string>{"p", "q"});
    CHECK(formula_vars(Formula::top()).empty());

    // Post-order, distinct occurrences, root last.
    auto subs = subformulas(f);
    std::vector<std::string> printed;
    for (const auto& s : subs) printed.push_back(print_formula(s));
    CHECK(printed == std::vector<std::string>{"q", "p", "q & p", "~p", "q & p | ~p"});

    // Duplicate subtrees are reported once.
    auto g = parse_formula("p & p");
    CHECK(subformulas(g).size() == 2);

    CHECK(connective_count(parse_formula("p")) == 0);
    CHECK(connective_count(parse_formula("~p & q")) == 2);
    CHECK(connective_count(parse_formula("p -> q")) == 2);  // ~p | q
}

TEST_CASE("conj_all and disj_all") {
    auto p = Formula::var("p"), q = Formula::var("q"), r = Formula::var("r");
    CHECK(print_formula(conj_all({p, q, r})) == "p & q & r");
    CHECK(print_formula(disj_all({p, q, r})) == "p | q | r");
    CHECK(structurally_equal(conj_all({p}), p));
    CHECK_THROWS_AS(conj_all({}), std::invalid_argument);
    CHECK_THROWS_AS(disj_all({}), std::invalid_argument);
}

TEST_CASE("tseitin structure") {
    // Atoms are returned unchanged.
    auto p = parse_formula("p");
    CHECK(structurally_equal(tseitin(p), p));
    CHECK(structurally_equal(tseitin(Formula::top()), Formula::top()));

    // ~p: root literal q1 plus two clauses.
    auto t = tseitin(parse_formula("~p"));
    CHECK(print_formula(t) == "q1 & (~q1 | ~p) & (q1 | p)");

    // p & q: root q1 plus three clauses.
    t = tseitin(parse_formula("p & q"));
    CHECK(print_formula(t) == "q1 & (q1 | ~p | ~q) & (~q1 | p) & (~q1 | q)");

    // p | q: root q1 plus three clauses.
    t = tseitin(parse_formula("p | q"));
    CHECK(print_formula(t) == "q1 & (~q1 | p | q) & (q1 | ~p) & (q1 | ~q)");

    // Fresh-variable prefix grows past clashes with existing q<digits> names.
    t = tseitin(parse_formula("q1 & q2"));
    auto vars = formula_vars(t);
    CHECK(std::find(vars.begin(), vars.end(), "qq1") != vars.end());
}

TEST_CASE("tseitin classical equisatisfiability") {
    for (const char* s : {"p & ~p", "p | ~p", "(p -> q) & p & ~q", "(p ^ q) & (q ^ r)",
                          "~(p & q) | r", "p <-> ~p"}) {
        auto f = parse_formula(s);
        CHECK(classically_sat(f) == classically_sat(tseitin(f)));
    }
}

TEST_CASE("scaffold") {
    // Fewer than two variables: unchanged.
    auto p = parse_formula("p");
    CHECK(structurally_equal(scaffold(p), p));
    CHECK(structurally_equal(scaffold(Formula::top()), Formula::top()));

    auto f = parse_formula("p & q");
    auto s = scaffold(f);
    CHECK(print_formula(s) ==
          "p & q & (p & q | ~p & q | p & ~q | ~p & ~q)");

    auto sc = scaffold(f, true);
    CHECK(print_formula(sc) == "p & q & ((~p | p | q) & (~q | q | p))");

    // One scaffold conjunct block per unordered variable pair.
    auto g = parse_formula("p | q | r");
    auto sg = scaffold(g);
    // f & (3 pair disjunctions conjoined)
    CHECK(connective_count(sg) > connective_count(g));
    CHECK(formula_vars(sg) == formula_vars(g));

    // Classically the scaffold tail is a tautology, so satisfiability agrees.
    for (const char* t : {"p & ~p", "p | q", "(p ^ q) & r"}) {
        auto h = parse_formula(t);
        CHECK(classically_sat(h) == classically_sat(scaffold(h)));
        CHECK(classically_sat(h) == classically_sat(scaffold(h, true)));
    }
}

TEST_CASE("basis_formula") {
    auto f = basis_formula({"a", "b"});
    CHECK(print_formula(f) == "~(a & b) & (a | b)");
    auto g = basis_formula({"a", "b", "c"});
    CHECK(print_formula(g) == "~(a & b) & ~(a & c) & ~(b & c) & (a | b | c)");
    CHECK_THROWS_AS(basis_formula({}), std::invalid_argument);

    // Classically: exactly-one is satisfied by one-hot assignments only.
    int count = 0;
    for (const auto& a : all_assignments({"a", "b", "c"}))
        if (eval_classical(g, a)) ++count;
    CHECK(count == 3);
}

TEST_CASE("pad_formula") {
    auto f = parse_formula("p");
    auto padded = pad_formula(f, 2);
    auto vars = formula_vars(padded);
    CHECK(vars == std::vector<std::string>{"p", "q1", "q2", "q3"});

    // Shape: basis(q1..q3) & (p&~q3 <-> p) & (p <-> ~q3), desugared.
    CHECK(structurally_equal(
        padded,
        conj_all({basis_formula({"q1", "q2", "q3"}),
                  Formula::iff(Formula::conj(Formula::var("p"),
                                             Formula::neg(Formula::var("q3"))),
                               Formula::var("p")),
                  Formula::iff(f, Formula::neg(Formula::var("q3")))})));

    CHECK_THROWS_AS(pad_formula(parse_formula("q1"), 2), std::invalid_argument);
    CHECK_THROWS_AS(pad_formula(f, 0), std::invalid_argument);

    // Classically satisfiable inputs stay satisfiable (q3 = 0, one of q1/q2
    // set).  An unsatisfiable input does NOT make the padding unsatisfiable:
    // q3 = 1 with every original variable false satisfies both biconditionals.
    for (const char* s : {"p | q", "T"}) CHECK(classically_sat(pad_formula(parse_formula(s), 2)));
    CHECK(classically_sat(pad_formula(parse_formula("p & ~p"), 2)));
}

TEST_CASE("cnf_clauses") {
    auto cs = cnf_clauses(parse_formula("(p | ~q) & r"));
    REQUIRE(cs.size() == 2);
    REQUIRE(cs[0].size() == 2);
    CHECK(cs[0][0].var == "p");
    CHECK(cs[0][0].positive);
    CHECK(cs[0][1].var == "q");
    CHECK_FALSE(cs[0][1].positive);
    REQUIRE(cs[1].size() == 1);
    CHECK(cs[1][0].var == "r");

    // Trivially-true conjuncts drop; ~T literals drop.
    CHECK(cnf_clauses(parse_formula("T & p")).size() == 1);
    CHECK(cnf_clauses(parse_formula("(p | T) & q")).size() == 1);
    auto weakened = cnf_clauses(parse_formula("p | ~T"));
    REQUIRE(weakened.size() == 1);
    CHECK(weakened[0].size() == 1);

    CHECK_THROWS_AS(cnf_clauses(parse_formula("p | q & r")), std::runtime_error);
    CHECK_THROWS_AS(cnf_clauses(parse_formula("~(p | q)")), std::runtime_error);
}

TEST_CASE("emit_dimacs") {
    std::string d = emit_dimacs(parse_formula("(p | ~q) & q"));
    CHECK(d ==
          "c pbsat 0.1.0\n"
          "c var 1 = p\n"
          "c var 2 = q\n"
          "p cnf 2 2\n"
          "1 -2 0\n"
          "2 0\n");
}

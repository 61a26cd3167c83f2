#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "pbsat/formula.hpp"
#include "pbsat/pba.hpp"
#include "pbsat/solver.hpp"

using namespace pbsat;

TEST_CASE("sat_classical on clause lists") {
    // (p | ~q) & q: forced p = q = 1.
    std::vector<Clause> cs{{{"p", true}, {"q", false}}, {{"q", true}}};
    auto m = sat_classical(cs);
    REQUIRE(m.has_value());
    CHECK(m->at("p"));
    CHECK(m->at("q"));

    // p & ~p is unsatisfiable.
    std::vector<Clause> unsat{{{"p", true}}, {{"p", false}}};
    CHECK_FALSE(sat_classical(unsat).has_value());

    // The empty clause set is satisfiable; an empty clause is not.
    CHECK(sat_classical(std::vector<Clause>{}).has_value());
    CHECK_FALSE(sat_classical(std::vector<Clause>{Clause{}}).has_value());

    // Formula overload on clausal input.
    auto m2 = sat_classical(parse_formula("(p | q) & ~p"));
    REQUIRE(m2.has_value());
    CHECK_FALSE(m2->at("p"));
    CHECK(m2->at("q"));
}

TEST_CASE("sat_classical models satisfy the formula") {
    for (const char* s : {"(p | q) & (~p | r) & (~q | r)",
                          "(a | b | c) & (~a | ~b) & (~b | ~c) & (~a | ~c)"}) {
        auto f = parse_formula(s);
        auto m = sat_classical(cnf_clauses(f));
        REQUIRE(m.has_value());
        CHECK(eval_classical(f, *m));
    }
}

TEST_CASE("varsat over finite algebras") {
    auto g = pba_glued(2);
    int a_el = g.index_of("a");

    // p | q evaluates to 1, e.g. with complementary elements of one block.
    auto r = varsat(g, g.one(), parse_formula("p | q"));
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(g.join(r.assignment.at("p"), r.assignment.at("q")) == g.one());

    // Hitting a non-extremal target element.
    auto r2 = varsat(g, a_el, parse_formula("p & q"));
    REQUIRE(r2.status == SearchStatus::Found);
    CHECK(g.meet(r2.assignment.at("p"), r2.assignment.at("q")) == a_el);

    // p & ~p is constantly 0: no assignment reaches a non-zero target.
    CHECK(varsat(g, g.one(), parse_formula("p & ~p")).status == SearchStatus::No);
    CHECK(varsat(g, a_el, parse_formula("p & ~p")).status == SearchStatus::No);
    CHECK(varsat(g, g.zero(), parse_formula("p & ~p")).status == SearchStatus::Found);

    // Weak variant: any non-zero value will do.
    auto w = varsat_weak(g, parse_formula("p & q"));
    REQUIRE(w.status == SearchStatus::Found);
    CHECK(g.meet(w.assignment.at("p"), w.assignment.at("q")) != g.zero());
    CHECK(varsat_weak(g, parse_formula("p & ~p")).status == SearchStatus::No);

    // Tight budgets abort the search.
    CHECK(varsat(g, g.one(), parse_formula("p & ~p & q & r & s"), 2).status ==
          SearchStatus::BudgetExceeded);

    CHECK_THROWS_AS(varsat(g, 99, parse_formula("p")), std::invalid_argument);
}

TEST_CASE("varsat respects meaningfulness") {
    // In the glued algebra, p | q with p,q from different blocks is undefined;
    // the search must still find a defined satisfying assignment.
    auto g = pba_glued(3);
    auto r = varsat(g, g.one(), parse_formula("(p | q) & ~(p & q)"));
    REQUIRE(r.status == SearchStatus::Found);
    int p = r.assignment.at("p"), q = r.assignment.at("q");
    CHECK(g.comm(p, q));
    CHECK(g.meet(g.join(p, q), g.neg(g.meet(p, q))) == g.one());
}

TEST_CASE("cert_from_witness round-trips through cert_verify") {
    auto two = pba_two();
    auto f = parse_formula("p | ~p");
    std::map<std::string, int> alpha{{"p", two.zero()}};
    auto cert = cert_from_witness(two, alpha, f);
    std::string why;
    CHECK_MESSAGE(cert_verify(cert, f, &why), why);

    // Glued algebra witness with a genuinely partial value set.
    auto g = pba_glued(2);
    auto h = parse_formula("(p | q) & ~(p & q)");
    std::map<std::string, int> beta{{"p", g.index_of("a")}, {"q", g.index_of("a'")}};
    REQUIRE(strongly_satisfies(h, beta, g));
    auto cert2 = cert_from_witness(g, beta, h);
    CHECK_MESSAGE(cert_verify(cert2, h, &why), why);

    // A witness that does not strongly satisfy is rejected at construction.
    std::map<std::string, int> gamma{{"p", g.index_of("a")}, {"q", g.index_of("a")}};
    CHECK_THROWS_AS(cert_from_witness(g, gamma, h), std::runtime_error);

    // Non-meaningful substitution is rejected.
    std::map<std::string, int> delta{{"p", g.index_of("a")}, {"q", g.index_of("b")}};
    CHECK_THROWS_AS(cert_from_witness(g, delta, parse_formula("p | q")), std::runtime_error);
}

TEST_CASE("cert_verify rejects mismatched and bogus certificates") {
    auto two = pba_two();
    auto f = parse_formula("p | ~p");
    auto cert = cert_from_witness(two, {{"p", two.zero()}}, f);

    // Same certificate against a different formula.
    std::string why;
    CHECK_FALSE(cert_verify(cert, parse_formula("p & ~p"), &why));
    CHECK_FALSE(why.empty());

    // Tamper with the root equation: drop every One-equation.
    auto broken = cert;
    for (auto& c : broken.cliques) {
        std::vector<CertEq> kept;
        for (const auto& e : c.eqs)
            if (e.shape != CertEq::Shape::One) kept.push_back(e);
        c.eqs = std::move(kept);
    }
    CHECK_FALSE(cert_verify(broken, f, &why));

    // A hand-built certificate claiming p & ~p is satisfiable must fail:
    // the clique containing {root, p, ~p, 0, 1} admits no consistent
    // valuation with root = 1.
    auto g2 = parse_formula("p & ~p");
    NonTrivCert bogus;
    bogus.vertex_names = {"zero", "one", "p", "np", "root"};
    bogus.tags = {{}, {}, {0}, {1}, {2}};
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) bogus.edges.emplace_back(u, v);
    CertClique c;
    c.members = {0, 1, 2, 3, 4};
    c.eqs.push_back({CertEq::Shape::Zero, 0});
    c.eqs.push_back({CertEq::Shape::One, 1});
    c.eqs.push_back({CertEq::Shape::Neg, 3, 2});
    c.eqs.push_back({CertEq::Shape::Meet, 4, 2, 3});
    c.eqs.push_back({CertEq::Shape::One, 4});
    bogus.cliques.push_back(c);
    bogus.rel.emplace_back(0, 1);
    CHECK_FALSE(cert_verify(bogus, g2, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("certificate serialization round-trip") {
    auto g = pba_glued(2);
    auto h = parse_formula("(p | q) & ~(p & q)");
    auto cert = cert_from_witness(
        g, {{"p", g.index_of("a")}, {"q", g.index_of("a'")}}, h);
    std::string text = print_cert(cert);
    auto back = parse_cert(text);
    CHECK(print_cert(back) == text);
    std::string why;
    CHECK_MESSAGE(cert_verify(back, h, &why), why);
}

TEST_CASE("allsat") {
    // Classically satisfiable: certificate comes from a two-valued witness.
    auto f = parse_formula("(p | q) & ~p");
    auto r = allsat(f);
    REQUIRE(r.status == SearchStatus::Found);
    REQUIRE(r.cert.has_value());
    std::string why;
    CHECK_MESSAGE(cert_verify(*r.cert, f, &why), why);

    // p & ~p is not satisfiable in any non-trivial partial Boolean algebra.
    auto r2 = allsat(parse_formula("p & ~p"));
    CHECK(r2.status == SearchStatus::No);
    CHECK_FALSE(r2.cert.has_value());

    // Tautologies always pass.
    auto r3 = allsat(parse_formula("p | ~p"));
    CHECK(r3.status == SearchStatus::Found);

    // Unsatisfiable clausal combination.
    auto r4 = allsat(parse_formula("p & (~p | q) & ~q"));
    CHECK(r4.status == SearchStatus::No);
}

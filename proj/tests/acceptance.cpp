// End-to-end acceptance checks.  Each criterion prints one pass/fail line;
// the process exits non-zero if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pbsat/er.hpp"
#include "pbsat/formula.hpp"
#include "pbsat/gadgets.hpp"
#include "pbsat/graph.hpp"
#include "pbsat/pba.hpp"
#include "pbsat/projector.hpp"
#include "pbsat/qhom.hpp"
#include "pbsat/solver.hpp"

using namespace pbsat;

namespace {

int g_failures = 0;

void run(int number, const std::string& what, const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s — %s (%.2fs)%s%s\n", number, ok ? "pass" : "fail",
                what.c_str(), secs, error.empty() ? "" : " error: ", error.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// The nine magic-square variables in row-major table order.
std::array<std::string, 9> magic_vars() {
    return {"a", "b", "c", "d", "e", "f", "g", "h", "i"};
}

std::map<std::string, MatC> magic_involution_assignment() {
    auto table = standard_magic();
    auto vars = magic_vars();
    std::map<std::string, MatC> alpha;
    for (int k = 0; k < 9; ++k) alpha[vars[k]] = table[k];
    return alpha;
}

// Random small rational in [-5, 5] with denominator up to 5.
Rat random_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 5);
    return Rat(num(rng), den(rng));
}

double frob(const MatC& m) { return m.norm(); }

// The evaluation fixtures: every non-trivial finite algebra the suite uses.
std::vector<std::pair<std::string, FinitePBA>> fixtures() {
    ProjectorOpsQ ops(2);
    MatQ zero = MatQ::Zero(2, 2), id = MatQ::Identity(2, 2);
    MatQ e1 = zero, e2 = zero, ep(2, 2), em(2, 2);
    e1(0, 0) = 1;
    e2(1, 1) = 1;
    Rat h(1, 2);
    ep << h, h, h, h;
    em << h, -h, -h, h;
    std::vector<std::pair<std::string, FinitePBA>> out;
    out.emplace_back("2", pba_two());
    out.emplace_back("four", pba_glued(1));
    out.emplace_back("glued6", pba_glued(2));
    out.emplace_back("proj2", tabulate_backend(ops, {zero, id, e1, e2, ep, em},
                                               {"0", "I", "E1", "E2", "E+", "E-"}));
    return out;
}

bool strong_satisfiable(const FinitePBA& a, const FormulaPtr& f) {
    auto r = varsat(a, a.one(), f);
    if (r.status == SearchStatus::BudgetExceeded)
        throw std::runtime_error("varsat budget exceeded");
    return r.status == SearchStatus::Found;
}

bool classically_satisfiable(const FormulaPtr& f) {
    return sat_classical(cnf_clauses(tseitin(f))).has_value();
}

// All structurally distinct formulas with at most `max_conn` connectives
// over the given atoms (variables plus T).
std::vector<FormulaPtr> enumerate_formulas(const std::vector<std::string>& vars, int max_conn) {
    std::vector<std::vector<FormulaPtr>> by_size(max_conn + 1);
    std::set<std::string> seen;
    auto add = [&](int size, const FormulaPtr& f) {
        if (seen.insert(print_formula(f)).second) by_size[size].push_back(f);
    };
    add(0, Formula::top());
    for (const auto& v : vars) add(0, Formula::var(v));
    for (int size = 1; size <= max_conn; ++size) {
        for (const auto& f : by_size[size - 1]) add(size, Formula::neg(f));
        for (int l = 0; l + 1 <= size; ++l) {
            int r = size - 1 - l;
            for (const auto& a : by_size[l])
                for (const auto& b : by_size[r]) {
                    add(size, Formula::conj(a, b));
                    add(size, Formula::disj(a, b));
                }
        }
    }
    std::vector<FormulaPtr> out;
    for (const auto& bucket : by_size)
        for (const auto& f : bucket) out.push_back(f);
    return out;
}

// Random formula over the given variables with roughly `conn` connectives.
FormulaPtr random_formula(std::mt19937& rng, const std::vector<std::string>& vars, int conn) {
    if (conn <= 0) {
        std::uniform_int_distribution<size_t> pick(0, vars.size() - 1);
        return Formula::var(vars[pick(rng)]);
    }
    std::uniform_int_distribution<int> op(0, 2);
    switch (op(rng)) {
        case 0: return Formula::neg(random_formula(rng, vars, conn - 1));
        default: {
            std::uniform_int_distribution<int> split(0, conn - 1);
            int l = split(rng);
            FormulaPtr a = random_formula(rng, vars, l);
            FormulaPtr b = random_formula(rng, vars, conn - 1 - l);
            return op(rng) == 1 ? Formula::conj(a, b) : Formula::disj(a, b);
        }
    }
}

// A random 2x2 unitary from a seeded generator (Gram-Schmidt on a random
// complex matrix).
MatC random_unitary2(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector2cd c0, c1;
    for (int i = 0; i < 2; ++i) {
        c0(i) = std::complex<double>(gauss(rng), gauss(rng));
        c1(i) = std::complex<double>(gauss(rng), gauss(rng));
    }
    c0.normalize();
    c1 -= c0 * (c0.adjoint() * c1)(0, 0);
    c1.normalize();
    MatC u(2, 2);
    u.col(0) = c0;
    u.col(1) = c1;
    return u;
}

// Brute-force homomorphism existence between small structures.
bool classical_hom_exists(const Structure& m, const Structure& n) {
    int ms = static_cast<int>(m.universe.size());
    int ns = static_cast<int>(n.universe.size());
    std::vector<int> h(ms, 0);
    while (true) {
        if (verify_qhom(m, n, indicator_lift(m, n, h, 1), 1).ok) return true;
        int i = 0;
        while (i < ms && ++h[i] == ns) h[i++] = 0;
        if (i == ms) return false;
    }
}

}  // namespace

int main() {
    const std::string data_dir = PBSAT_DATA_DIR;

    run(1, "standard magic table satisfies the magic conditions at d = 4", [] {
        return magic_satisfies(standard_magic(), 4);
    });

    run(2, "magic formula is classically unsatisfiable (direct and via Tseitin)", [] {
        auto mu = magic_formula();
        auto vars = formula_vars(mu);
        for (int mask = 0; mask < 512; ++mask) {
            std::map<std::string, bool> a;
            for (int i = 0; i < 9; ++i) a[vars[i]] = (mask >> i) & 1;
            if (eval_classical(mu, a)) return false;
        }
        return !sat_classical(cnf_clauses(tseitin(mu))).has_value();
    });

    run(3, "involution witness for the magic formula yields a verifying certificate", [] {
        InvolutionOps inv(4);
        auto mu = magic_formula();
        auto alpha = magic_involution_assignment();
        if (!strongly_satisfies(mu, alpha, inv)) return false;
        auto cert = cert_from_witness(inv, alpha, mu);
        std::string why;
        bool ok = cert_verify(cert, mu, &why);
        if (!ok) std::cerr << "certificate rejected: " << why << "\n";
        return ok;
    });

    run(4, "Pauli dictionary identities on 100 seeded rational vector pairs", [] {
        std::mt19937 rng(20240401);
        MatC id = MatC::Identity(2, 2);
        const std::complex<double> i2(0.0, 2.0);
        for (int t = 0; t < 100; ++t) {
            Vec3Q u, v;
            for (int k = 0; k < 3; ++k) u(k) = random_rat(rng);
            for (int k = 0; k < 3; ++k) v(k) = random_rat(rng);
            MatC su = pauli(u), sv = pauli(v);
            Rat d = dot(u, v);
            double dd = static_cast<double>(d.numerator()) / static_cast<double>(d.denominator());
            if (frob(su * sv - sv * su - i2 * pauli(cross(u, v))) > 1e-9) return false;
            if (frob(su * sv + sv * su - 2.0 * dd * id) > 1e-9) return false;
        }
        return true;
    });

    run(5, "shipped ray set is a Kochen-Specker proof (facet, assignment, no colouring)",
        [&] {
            auto s = parse_vector_set(slurp(data_dir + "/ks61.vec"));
            auto g = orthogonality_graph(s);
            if (!is_facet(g, 3)) return false;
            if (!is_basis_complete(s)) return false;
            if (!verify_orthogonal_assignment(g, canonical_assignment(s), 3)) return false;
            return !find_nc_colouring(g).has_value();
        });

    run(6, "Tseitin preserves strong satisfiability over all fixtures (exhaustive)", [] {
        auto formulas = enumerate_formulas({"p", "q", "r"}, 3);
        for (const auto& [name, a] : fixtures()) {
            for (const auto& f : formulas) {
                bool direct = strong_satisfiable(a, f);
                bool translated = strong_satisfiable(a, tseitin(f));
                if (direct != translated) {
                    std::cerr << "mismatch over " << name << " at " << print_formula(f)
                              << ": direct=" << direct << " tseitin=" << translated << "\n";
                    return false;
                }
            }
        }
        return true;
    });

    run(7, "scaffolding reduces algebra satisfiability to classical satisfiability", [] {
        std::mt19937 rng(77001);
        std::vector<std::string> vars{"p1", "p2", "p3", "p4"};
        auto fx = fixtures();
        for (int t = 0; t < 50; ++t) {
            std::uniform_int_distribution<int> conn(1, 6);
            auto f = random_formula(rng, vars, conn(rng));
            bool classical = classically_satisfiable(f);
            auto sc = scaffold(f);
            for (const auto& [name, a] : fx) {
                if (strong_satisfiable(a, sc) != classical) {
                    std::cerr << "mismatch over " << name << " at " << print_formula(f) << "\n";
                    return false;
                }
            }
        }
        return true;
    });

    run(8, "padding witnesses lift from dimension 2 to 3", [] {
        ProjectorOpsQ at3(3);

        // Top: triggers the corner correction.
        auto lifted_top =
            lift_padding_witness(std::map<std::string, MatQ>{}, Formula::top(), 2);
        if (!strongly_satisfies(pad_formula(Formula::top(), 2), lifted_top, at3)) return false;

        // The two-element basis formula with the standard basis witness.
        auto b2 = basis_d(2);
        std::map<std::string, MatQ> alpha;
        for (int i = 0; i < 2; ++i) {
            MatQ e = MatQ::Zero(2, 2);
            e(i, i) = 1;
            alpha["p_v" + std::to_string(i + 1)] = e;
        }
        auto lifted = lift_padding_witness(alpha, b2, 2);
        return strongly_satisfies(pad_formula(b2, 2), lifted, at3);
    });

    run(9, "scalarized witnesses check out (basis over R, magic over C), zeros rejected", [] {
        // basis_3, strong, R, d = 3.
        auto b3 = basis_d(3);
        auto sent_b = scalarize(build_system(b3, ErMode::Strong), 3, ErField::Real);
        std::map<std::string, MatC> alpha_b;
        for (int i = 0; i < 3; ++i) {
            MatC e = MatC::Zero(3, 3);
            e(i, i) = 1;
            alpha_b["p_v" + std::to_string(i + 1)] = e;
        }
        auto values_b = flatten_witness(b3, alpha_b, 3, ErField::Real);
        if (check_witness(sent_b, values_b).has_value()) return false;
        if (!check_witness(sent_b, zero_witness(sent_b)).has_value()) return false;

        // The magic formula, strong, C, d = 4, via the projector form of the
        // standard involution table.
        InvolutionOps inv(4);
        auto mu = magic_formula();
        std::map<std::string, MatC> alpha_m;
        for (const auto& [var, a] : magic_involution_assignment())
            alpha_m[var] = inv.from_involution(a);
        auto sent_m = scalarize(build_system(mu, ErMode::Strong), 4, ErField::Complex);
        auto values_m = flatten_witness(mu, alpha_m, 4, ErField::Complex);
        if (check_witness(sent_m, values_m).has_value()) return false;
        return check_witness(sent_m, zero_witness(sent_m)).has_value();
    });

    run(10, "magic decoding recovers qubit pairs from 20 conjugated tables", [] {
        std::mt19937 rng(55100);
        for (int t = 0; t < 20; ++t) {
            MatC u = random_unitary2(rng);
            MatC w = kron(u, u);
            auto table = standard_magic();
            for (auto& a : table) a = MatC(w.adjoint() * a * w);
            if (!magic_satisfies(table, 4)) return false;
            auto dec = decode_magic(table, 4);
            if (!dec.ok) {
                std::cerr << "decode failed: " << dec.reason << "\n";
                return false;
            }
            for (const auto& q : {dec.qubit1, dec.qubit2}) {
                if (frob(q[0] * q[2] + q[2] * q[0]) > 1e-8) return false;
            }
        }
        return true;
    });

    run(11, "cross-term consistency graph admits the constructed line assignment", [&] {
        auto ks = parse_vector_set(slurp(data_dir + "/ks61.vec"));
        auto t = parse_cross_term("x1 x x2");
        auto tg = term_graph(t);
        if (tg.size() != 3 || !is_facet(tg, 3)) return false;

        // An orthonormal-line witness on the term triangle.
        std::vector<ProjLine> g_lines{ProjLine(1, 0, 0), ProjLine(0, 1, 0),
                                      ProjLine(0, 0, 1)};

        auto big = cke(tg, ks);
        int n = static_cast<int>(ks.lines.size());

        // Product vertices take the line of their term-graph coordinate; the
        // consistency vertices take the two lines spanning the orthogonal
        // plane (appended in the same order cke creates them).
        std::vector<MatQ> assignment;
        assignment.reserve(big.size());
        for (int w = 0; w < tg.size(); ++w)
            for (int u = 0; u < n; ++u) assignment.push_back(g_lines[w].projector());
        for (int w = 0; w < tg.size(); ++w) {
            auto [l1, l2] = plane_basis(g_lines[w]);
            MatQ p1 = l1.projector(), p2 = l2.projector();
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    assignment.push_back(p1);
                    assignment.push_back(p2);
                }
        }
        if (static_cast<int>(assignment.size()) != big.size()) return false;
        return verify_orthogonal_assignment(big, assignment, 3);
    });

    run(12, "quantum homomorphism checks line up with classical satisfiability", [] {
        // Fixture structure pairs: formula satisfiability matches brute-force
        // homomorphism existence.
        auto edge = parse_structure("rel E 2\nelem a\nelem b\ntuple E a b\ntuple E b a\n");
        auto loop = parse_structure("rel E 2\nelem c\ntuple E c c\n");
        auto bare = parse_structure("rel E 2\nelem c\n");
        auto k3 = parse_structure(
            "rel E 2\nelem u\nelem v\nelem w\n"
            "tuple E u v\ntuple E v u\ntuple E u w\ntuple E w u\n"
            "tuple E v w\ntuple E w v\n");
        std::vector<std::pair<Structure, Structure>> pairs{
            {edge, loop}, {edge, bare}, {edge, edge}, {k3, edge}, {k3, k3}};
        for (const auto& [m, n] : pairs) {
            bool hom = classical_hom_exists(m, n);
            bool sat = classically_satisfiable(hom_formula(m, n));
            if (hom != sat) return false;
        }

        // Indicator lifts at d = 1, exhaustively over assignments of small
        // clausal formulas: the lift is a quantum homomorphism V -> T exactly
        // when the assignment satisfies the formula.
        std::vector<std::string> cnfs{
            "(p | ~q) & q",
            "p & ~p",
            "(a | b | c) & (~a | ~b) & ~c",
            "(w | x | ~y) & (~w | y | z) & (x | ~z)",
            "p | q",
        };
        for (const auto& text : cnfs) {
            auto f = parse_formula(text);
            auto [v, tt] = cnf_to_structures(f);
            auto vars = formula_vars(f);
            int nv = static_cast<int>(vars.size());
            bool any = false;
            for (int mask = 0; mask < (1 << nv); ++mask) {
                std::map<std::string, bool> a;
                std::vector<int> h(nv);
                for (int i = 0; i < nv; ++i) {
                    a[vars[i]] = (mask >> i) & 1;
                    h[i] = (mask >> i) & 1;
                }
                bool sat = eval_classical(f, a);
                bool qok = verify_qhom(v, tt, indicator_lift(v, tt, h, 1), 1).ok;
                if (sat != qok) return false;
                any = any || sat;
            }
            if (any != classically_satisfiable(f)) return false;
        }
        return true;
    });

    if (g_failures == 0) {
        std::printf("all 12 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", g_failures);
    return 1;
}

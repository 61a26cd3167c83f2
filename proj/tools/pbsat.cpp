// pbsat: batch front end for partial-Boolean-algebra satisfiability.
//
// Exit codes: 0 = decided yes, 1 = decided no, 2 = error or budget exceeded.

#include "pbsat/er.hpp"
#include "pbsat/formula.hpp"
#include "pbsat/gadgets.hpp"
#include "pbsat/graph.hpp"
#include "pbsat/pba.hpp"
#include "pbsat/projector.hpp"
#include "pbsat/qhom.hpp"
#include "pbsat/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kYes = 0, kNo = 1, kError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

pbsat::ErField parse_field(const std::string& s) {
    if (s == "R" || s == "r") return pbsat::ErField::Real;
    if (s == "C" || s == "c") return pbsat::ErField::Complex;
    throw std::runtime_error("field must be R or C");
}

pbsat::ErMode parse_mode(const std::string& s) {
    if (s == "strong") return pbsat::ErMode::Strong;
    if (s == "weak") return pbsat::ErMode::Weak;
    throw std::runtime_error("mode must be strong or weak");
}

// Family file: lines "map <m-label> <n-label> <d*d complex entries>";
// unmentioned pairs are zero.
pbsat::QHomFamily parse_family(const std::string& text, const pbsat::Structure& m,
                               const pbsat::Structure& n, int d) {
    pbsat::QHomFamily f;
    for (size_t mi = 0; mi < m.universe.size(); ++mi)
        for (size_t ni = 0; ni < n.universe.size(); ++ni)
            f[{static_cast<int>(mi), static_cast<int>(ni)}] = pbsat::MatC::Zero(d, d);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok != "map")
            throw std::runtime_error("family line " + std::to_string(lineno) +
                                     ": unknown record '" + tok + "'");
        std::string ml, nl;
        if (!(ls >> ml >> nl))
            throw std::runtime_error("family line " + std::to_string(lineno) +
                                     ": map needs two labels");
        int mi = m.index_of(ml), ni = n.index_of(nl);
        if (mi < 0 || ni < 0)
            throw std::runtime_error("family line " + std::to_string(lineno) +
                                     ": unknown element");
        std::string rest;
        std::getline(ls, rest);
        f[{mi, ni}] = pbsat::parse_complex_matrix(rest, d, d);
    }
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace pbsat;

    CLI::App app{"pbsat: satisfiability over partial Boolean algebras"};
    app.set_version_flag("--version", std::string(kVersionString));
    app.require_subcommand(1);

    std::string formula_text, pba_path, assign_path, out_path, cert_path;
    std::string graph_path, ks_path, term_text, field_str = "R", mode_str = "strong";
    std::string from_path, to_path, family_path;
    std::string target_name = "one";
    int dim = 3;
    long long budget = kDefaultBudget;
    bool weak = false;
    double eps = kDefaultEps;

    auto* c_eval = app.add_subcommand("eval", "evaluate a formula in a finite pBA");
    c_eval->add_option("formula", formula_text)->required();
    c_eval->add_option("--pba", pba_path)->required();
    c_eval->add_option("--assign", assign_path)->required();

    auto* c_varsat = app.add_subcommand("varsat", "search for a satisfying substitution");
    c_varsat->add_option("formula", formula_text)->required();
    c_varsat->add_option("--pba", pba_path)->required();
    c_varsat->add_option("--target", target_name, "target element (default: one)");
    c_varsat->add_flag("--weak", weak, "accept any value other than zero");
    c_varsat->add_option("--budget", budget);

    auto* c_allsat = app.add_subcommand("allsat", "decide SAT over all non-trivial pBAs");
    c_allsat->add_option("formula", formula_text)->required();
    c_allsat->add_option("-o,--output", out_path, "certificate output file");
    c_allsat->add_option("--budget", budget);

    auto* c_certv = app.add_subcommand("cert-verify", "verify a non-triviality certificate");
    c_certv->add_option("formula", formula_text)->required();
    c_certv->add_option("--cert", cert_path)->required();

    auto* c_tseitin = app.add_subcommand("tseitin", "emit the Tseitin CNF as DIMACS");
    c_tseitin->add_option("formula", formula_text)->required();
    c_tseitin->add_option("-o,--output", out_path);

    auto* c_gadget = app.add_subcommand("gadget", "emit graph/formula gadgets");
    c_gadget->require_subcommand(1);
    auto* g_phig = c_gadget->add_subcommand("phi-g", "formula of a graph");
    g_phig->add_option("--graph", graph_path)->required();
    auto* g_basis = c_gadget->add_subcommand("basis", "basis_d formula");
    g_basis->add_option("--d", dim)->required();
    auto* g_cke = c_gadget->add_subcommand("cke", "CKE graph of a facet graph");
    g_cke->add_option("--graph", graph_path)->required();
    g_cke->add_option("--ks", ks_path)->required();
    g_cke->add_option("-o,--output", out_path);
    auto* g_tg = c_gadget->add_subcommand("term-graph", "graph of a cross-product term");
    g_tg->add_option("term", term_text)->required();
    g_tg->add_option("-o,--output", out_path);
    auto* g_theta = c_gadget->add_subcommand("theta", "theta_t formula");
    g_theta->add_option("term", term_text)->required();
    g_theta->add_option("--ks", ks_path)->required();
    g_theta->add_option("-o,--output", out_path);
    auto* g_magic = c_gadget->add_subcommand("magic", "the magic-square formula mu");
    auto* g_vth = c_gadget->add_subcommand("vartheta", "vartheta_t formula");
    g_vth->add_option("term", term_text)->required();
    g_vth->add_option("-o,--output", out_path);
    auto* g_pad = c_gadget->add_subcommand("pad", "dimension-padding transform");
    g_pad->add_option("formula", formula_text)->required();
    g_pad->add_option("--d", dim)->required();

    auto* c_ks = app.add_subcommand("ks-check", "verify a Kochen-Specker vector set");
    c_ks->add_option("vectors", ks_path)->required();

    auto* c_enc = app.add_subcommand("encode-er", "emit the SMT-LIB2 encoding");
    c_enc->add_option("formula", formula_text)->required();
    c_enc->add_option("--d", dim)->required();
    c_enc->add_option("--field", field_str, "R or C");
    c_enc->add_option("--mode", mode_str, "strong or weak");
    c_enc->add_option("-o,--output", out_path);

    auto* c_wit = app.add_subcommand("witness-check", "check a scalar witness");
    c_wit->add_option("formula", formula_text)->required();
    c_wit->add_option("--d", dim)->required();
    c_wit->add_option("--field", field_str);
    c_wit->add_option("--mode", mode_str);
    c_wit->add_option("--assign", assign_path)->required();
    c_wit->add_option("--eps", eps);

    auto* c_qhom = app.add_subcommand("qhom-verify", "verify a quantum homomorphism");
    c_qhom->add_option("--from", from_path)->required();
    c_qhom->add_option("--to", to_path)->required();
    c_qhom->add_option("--family", family_path)->required();
    c_qhom->add_option("--d", dim)->required();
    c_qhom->add_option("--eps", eps);

    auto* c_cnf = app.add_subcommand("cnf-to-structures", "3CNF to (V_phi, T_phi)");
    c_cnf->add_option("formula", formula_text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kYes : kError;
    }

    try {
        if (*c_eval) {
            FinitePBA a = parse_pba(read_file(pba_path));
            auto alpha = parse_assignment(read_file(assign_path), a);
            auto f = parse_formula(formula_text);
            auto r = meaningful_eval(f, alpha, a);
            if (!r.value) {
                std::cout << "undefined at " << print_formula(r.offending) << "\n";
                return kNo;
            }
            std::cout << a.name(*r.value) << "\n";
            return kYes;
        }

        if (*c_varsat) {
            FinitePBA a = parse_pba(read_file(pba_path));
            auto f = parse_formula(formula_text);
            VarsatOutcome r;
            if (weak) {
                r = varsat_weak(a, f, budget);
            } else {
                int target = a.index_of(target_name);
                if (target < 0) throw std::runtime_error("unknown element '" + target_name + "'");
                r = varsat(a, target, f, budget);
            }
            if (r.status == SearchStatus::BudgetExceeded) {
                std::cerr << "error: budget exceeded after " << r.nodes << " nodes\n";
                return kError;
            }
            if (r.status == SearchStatus::No) return kNo;
            for (const auto& [var, el] : r.assignment)
                std::cout << var << ' ' << a.name(el) << "\n";
            return kYes;
        }

        if (*c_allsat) {
            auto f = parse_formula(formula_text);
            auto r = allsat(f, budget);
            if (r.status == SearchStatus::BudgetExceeded) {
                std::cerr << "error: budget exceeded\n";
                return kError;
            }
            if (r.status == SearchStatus::No) return kNo;
            write_output(out_path, print_cert(*r.cert));
            return kYes;
        }

        if (*c_certv) {
            auto f = parse_formula(formula_text);
            auto cert = parse_cert(read_file(cert_path));
            std::string why;
            if (cert_verify(cert, f, &why)) return kYes;
            std::cout << "invalid: " << why << "\n";
            return kNo;
        }

        if (*c_tseitin) {
            auto f = parse_formula(formula_text);
            write_output(out_path, emit_dimacs(tseitin(f)));
            return kYes;
        }

        if (*c_gadget) {
            if (*g_phig) {
                auto g = parse_graph(read_file(graph_path));
                std::cout << print_formula(formula_of_graph(g)) << "\n";
            } else if (*g_basis) {
                std::cout << print_formula(basis_d(dim)) << "\n";
            } else if (*g_cke) {
                auto g = parse_graph(read_file(graph_path));
                auto ks = parse_vector_set(read_file(ks_path));
                write_output(out_path, print_graph(cke(g, ks)));
            } else if (*g_tg) {
                write_output(out_path, print_graph(term_graph(parse_cross_term(term_text))));
            } else if (*g_theta) {
                auto ks = parse_vector_set(read_file(ks_path));
                write_output(out_path,
                             print_formula(theta(parse_cross_term(term_text), ks)) + "\n");
            } else if (*g_magic) {
                std::cout << print_formula(magic_formula()) << "\n";
            } else if (*g_vth) {
                write_output(out_path,
                             print_formula(vartheta(parse_cross_term(term_text))) + "\n");
            } else if (*g_pad) {
                auto f = parse_formula(formula_text);
                std::cout << print_formula(pad_formula(f, dim)) << "\n";
            }
            return kYes;
        }

        if (*c_ks) {
            auto s = parse_vector_set(read_file(ks_path));
            auto g = orthogonality_graph(s);
            bool facet = is_facet(g, 3);
            bool bc = is_basis_complete(s);
            bool oa = verify_orthogonal_assignment(g, canonical_assignment(s), 3);
            auto colouring = find_nc_colouring(g);
            std::cout << "vectors: " << s.lines.size() << "\n";
            std::cout << "edges: " << g.edge_count() << "\n";
            std::cout << "facet: " << (facet ? "yes" : "no") << "\n";
            std::cout << "basis-complete: " << (bc ? "yes" : "no") << "\n";
            std::cout << "orthogonal-assignment: " << (oa ? "yes" : "no") << "\n";
            if (colouring) {
                std::cout << "colouring:";
                for (int v = 0; v < g.size(); ++v)
                    if ((*colouring)[v]) std::cout << ' ' << g.label(v);
                std::cout << "\n";
            } else {
                std::cout << "colouring: none\n";
            }
            return (facet && bc && oa && !colouring) ? kYes : kNo;
        }

        if (*c_enc) {
            auto f = parse_formula(formula_text);
            auto sys = build_system(f, parse_mode(mode_str));
            write_output(out_path, emit_smt(scalarize(sys, dim, parse_field(field_str))));
            return kYes;
        }

        if (*c_wit) {
            auto f = parse_formula(formula_text);
            auto sys = build_system(f, parse_mode(mode_str));
            auto sentence = scalarize(sys, dim, parse_field(field_str));
            auto values = parse_scalar_assignment(read_file(assign_path));
            auto bad = check_witness(sentence, values, eps);
            if (!bad) return kYes;
            std::cout << "violated: " << print_atom(sentence.atoms[*bad]) << "\n";
            return kNo;
        }

        if (*c_qhom) {
            auto m = parse_structure(read_file(from_path));
            auto n = parse_structure(read_file(to_path));
            auto fam = parse_family(read_file(family_path), m, n, dim);
            auto r = verify_qhom(m, n, fam, dim, eps);
            if (r.ok) return kYes;
            std::cout << "invalid: " << r.reason << "\n";
            return kNo;
        }

        if (*c_cnf) {
            auto f = parse_formula(formula_text);
            auto [v, t] = cnf_to_structures(f);
            std::cout << "# V_phi\n" << print_structure(v) << "# T_phi\n" << print_structure(t);
            return kYes;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

#include "pbsat/pba.hpp"

#include "pbsat/graph.hpp"

#include <sstream>

namespace pbsat {

// ---- FinitePBA ----------------------------------------------------------

int FinitePBA::add_element(const std::string& name) {
    if (index_of(name) >= 0)
        throw std::invalid_argument("duplicate element name '" + name + "'");
    names_.push_back(name);
    int n = size();
    for (auto& row : comm_) row.push_back(0);
    comm_.emplace_back(n, 0);
    comm_.back()[n - 1] = 1;  // reflexive
    neg_.push_back(-1);
    for (auto& row : join_) row.push_back(-1);
    join_.emplace_back(n, -1);
    for (auto& row : meet_) row.push_back(-1);
    meet_.emplace_back(n, -1);
    return n - 1;
}

int FinitePBA::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    return -1;
}

void FinitePBA::set_comm(int a, int b) { comm_[a][b] = comm_[b][a] = 1; }
void FinitePBA::set_neg(int a, int b) { neg_[a] = b; }

void FinitePBA::set_join(int a, int b, int c) { join_[a][b] = join_[b][a] = c; }
void FinitePBA::set_meet(int a, int b, int c) { meet_[a][b] = meet_[b][a] = c; }

FinitePBA::Element FinitePBA::neg(Element a) const {
    if (neg_[a] < 0) throw std::runtime_error("negation undefined on '" + names_[a] + "'");
    return neg_[a];
}

FinitePBA::Element FinitePBA::join(Element a, Element b) const {
    if (join_[a][b] < 0)
        throw std::runtime_error("join undefined on '" + names_[a] + "','" + names_[b] + "'");
    return join_[a][b];
}

FinitePBA::Element FinitePBA::meet(Element a, Element b) const {
    if (meet_[a][b] < 0)
        throw std::runtime_error("meet undefined on '" + names_[a] + "','" + names_[b] + "'");
    return meet_[a][b];
}

// ---- validation ---------------------------------------------------------

namespace {

std::string elems(const FinitePBA& a, std::initializer_list<int> xs) {
    std::string out;
    for (int x : xs) {
        if (!out.empty()) out += ',';
        out += a.name(x);
    }
    return out;
}

}  // namespace

std::vector<PbaError> validate_pba(const FinitePBA& a) {
    std::vector<PbaError> errs;
    auto err = [&](PbaErrorKind k, const std::string& m) { errs.push_back({k, m}); };

    int n = a.size();
    if (n == 0 || a.zero() < 0 || a.one() < 0) {
        err(PbaErrorKind::Structure, "algebra must have designated 0 and 1");
        return errs;
    }
    for (int i = 0; i < n; ++i)
        if (!a.neg_defined(i))
            err(PbaErrorKind::Structure, "negation undefined on " + a.name(i));
    if (!errs.empty()) return errs;

    for (int i = 0; i < n; ++i) {
        if (!a.comm(i, i)) err(PbaErrorKind::NotReflexive, a.name(i));
        for (int j = 0; j < n; ++j)
            if (a.comm(i, j) != a.comm(j, i))
                err(PbaErrorKind::NotSymmetric, elems(a, {i, j}));
    }
    for (int i = 0; i < n; ++i) {
        if (!a.comm(a.zero(), i))
            err(PbaErrorKind::Structure, "0 not commeasurable with " + a.name(i));
        if (!a.comm(a.one(), i))
            err(PbaErrorKind::Structure, "1 not commeasurable with " + a.name(i));
    }

    // Operations defined exactly on commeasurable pairs, landing in the carrier.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool c = a.comm(i, j);
            if (c && (!a.join_defined(i, j) || !a.meet_defined(i, j)))
                err(PbaErrorKind::OperationOutsideDomain,
                    "join/meet missing on commeasurable pair " + elems(a, {i, j}));
            if (!c && (a.join_defined(i, j) || a.meet_defined(i, j)))
                err(PbaErrorKind::OperationOutsideDomain,
                    "join/meet defined on non-commeasurable pair " + elems(a, {i, j}));
        }
    if (!errs.empty()) return errs;

    // (Ext) on subset-maximal commeasurability cliques.
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(a.name(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a.comm(i, j)) g.add_edge(i, j);

    for (const auto& clique : maximal_cliques(g)) {
        std::vector<char> in(n, 0);
        for (int v : clique) in[v] = 1;
        auto ext = [&](const std::string& axiom, std::initializer_list<int> w) {
            std::string cl;
            for (int v : clique) {
                if (!cl.empty()) cl += ',';
                cl += a.name(v);
            }
            err(PbaErrorKind::ExtViolated,
                "clique {" + cl + "}: " + axiom + " fails at (" + elems(a, w) + ")");
        };

        bool closed = true;
        if (!in[a.zero()] || !in[a.one()]) {
            ext("0/1 membership", {});
            closed = false;
        }
        for (int x : clique) {
            if (!in[a.neg(x)]) {
                ext("closure under ~", {x});
                closed = false;
            }
            for (int y : clique) {
                if (!in[a.join(x, y)] || !in[a.meet(x, y)]) {
                    ext("closure under join/meet", {x, y});
                    closed = false;
                }
            }
        }
        if (!closed) continue;

        for (int x : clique) {
            if (a.join(x, x) != x) ext("idempotence (join)", {x});
            if (a.meet(x, x) != x) ext("idempotence (meet)", {x});
            if (a.join(x, a.zero()) != x) ext("identity (join with 0)", {x});
            if (a.meet(x, a.one()) != x) ext("identity (meet with 1)", {x});
            if (a.join(x, a.neg(x)) != a.one()) ext("complement (join)", {x});
            if (a.meet(x, a.neg(x)) != a.zero()) ext("complement (meet)", {x});
            for (int y : clique) {
                if (a.join(x, y) != a.join(y, x)) ext("commutativity (join)", {x, y});
                if (a.meet(x, y) != a.meet(y, x)) ext("commutativity (meet)", {x, y});
                if (a.join(x, a.meet(x, y)) != x) ext("absorption (join)", {x, y});
                if (a.meet(x, a.join(x, y)) != x) ext("absorption (meet)", {x, y});
                for (int z : clique) {
                    if (a.join(a.join(x, y), z) != a.join(x, a.join(y, z)))
                        ext("associativity (join)", {x, y, z});
                    if (a.meet(a.meet(x, y), z) != a.meet(x, a.meet(y, z)))
                        ext("associativity (meet)", {x, y, z});
                    if (a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)))
                        ext("distributivity (meet over join)", {x, y, z});
                    if (a.join(x, a.meet(y, z)) != a.meet(a.join(x, y), a.join(x, z)))
                        ext("distributivity (join over meet)", {x, y, z});
                }
            }
        }
    }
    return errs;
}

bool is_homomorphism(const FinitePBA& a, const FinitePBA& b, const std::vector<int>& h,
                     std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (static_cast<int>(h.size()) != a.size()) return fail("map has wrong domain size");
    for (int x : h)
        if (x < 0 || x >= b.size()) return fail("map leaves the codomain");
    if (h[a.zero()] != b.zero()) return fail("0 not preserved");
    if (h[a.one()] != b.one()) return fail("1 not preserved");
    for (int x = 0; x < a.size(); ++x) {
        for (int y = 0; y < a.size(); ++y) {
            if (!a.comm(x, y)) continue;
            if (!b.comm(h[x], h[y]))
                return fail("commeasurability not preserved at " + elems(a, {x, y}));
            if (b.join(h[x], h[y]) != h[a.join(x, y)])
                return fail("join not preserved at " + elems(a, {x, y}));
            if (b.meet(h[x], h[y]) != h[a.meet(x, y)])
                return fail("meet not preserved at " + elems(a, {x, y}));
        }
        if (h[a.neg(x)] != b.neg(h[x])) return fail("negation not preserved at " + a.name(x));
    }
    return true;
}

// ---- standard algebras --------------------------------------------------

FinitePBA pba_two() {
    FinitePBA a;
    int z = a.add_element("0"), o = a.add_element("1");
    a.set_zero(z);
    a.set_one(o);
    a.set_neg(z, o);
    a.set_neg(o, z);
    for (int i : {z, o})
        for (int j : {z, o}) {
            a.set_comm(i, j);
            a.set_join(i, j, i | j);
            a.set_meet(i, j, i & j);
        }
    return a;
}

FinitePBA pba_powerset(int n) {
    if (n < 0 || n > 16) throw std::invalid_argument("pba_powerset: bad n");
    FinitePBA a;
    int total = 1 << n;
    for (int m = 0; m < total; ++m) a.add_element("s" + std::to_string(m));
    a.set_zero(0);
    a.set_one(total - 1);
    for (int x = 0; x < total; ++x) {
        a.set_neg(x, (total - 1) & ~x);
        for (int y = 0; y < total; ++y) {
            a.set_comm(x, y);
            a.set_join(x, y, x | y);
            a.set_meet(x, y, x & y);
        }
    }
    return a;
}

FinitePBA pba_glued(int blocks) {
    if (blocks < 1) throw std::invalid_argument("pba_glued: need at least one block");
    FinitePBA a;
    int z = a.add_element("0"), o = a.add_element("1");
    a.set_zero(z);
    a.set_one(o);
    a.set_neg(z, o);
    a.set_neg(o, z);
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < blocks; ++k) {
        std::string base(1, static_cast<char>('a' + k));
        int x = a.add_element(base);
        int nx = a.add_element(base + "'");
        a.set_neg(x, nx);
        a.set_neg(nx, x);
        pairs.emplace_back(x, nx);
    }
    // Each block {0, 1, x, x'} is a four-element Boolean algebra; distinct
    // blocks share only the bounds.
    auto wire = [&](int p, int q, int join, int meet) {
        a.set_comm(p, q);
        a.set_join(p, q, join);
        a.set_meet(p, q, meet);
    };
    wire(z, z, z, z);
    wire(z, o, o, z);
    wire(o, o, o, o);
    for (auto [x, nx] : pairs) {
        for (int e : {x, nx}) {
            wire(e, e, e, e);
            wire(z, e, e, z);
            wire(o, e, o, e);
        }
        wire(x, nx, o, z);
    }
    return a;
}

FinitePBA standard_algebra(const std::string& name) {
    if (name == "2") return pba_two();
    if (name == "four") return pba_glued(1);  // the four-element Boolean algebra
    if (name.rfind("powerset", 0) == 0) return pba_powerset(std::stoi(name.substr(8)));
    if (name.rfind("glued", 0) == 0) {
        int elements = std::stoi(name.substr(5));
        if (elements < 4 || elements % 2 != 0)
            throw std::invalid_argument("glued<n>: n must be even and >= 4");
        return pba_glued((elements - 2) / 2);
    }
    throw std::invalid_argument("unknown standard algebra '" + name + "'");
}

// ---- file formats -------------------------------------------------------

FinitePBA parse_pba(const std::string& text) {
    FinitePBA a;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto idx = [&](const std::string& n) {
        int i = a.index_of(n);
        if (i < 0)
            throw std::runtime_error("pba line " + std::to_string(lineno) + ": unknown element '" + n + "'");
        return i;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        std::string x, y, z;
        if (tok == "elem" && (ls >> x)) {
            a.add_element(x);
        } else if (tok == "zero" && (ls >> x)) {
            a.set_zero(idx(x));
        } else if (tok == "one" && (ls >> x)) {
            a.set_one(idx(x));
        } else if (tok == "comm" && (ls >> x >> y)) {
            a.set_comm(idx(x), idx(y));
        } else if (tok == "neg" && (ls >> x >> y)) {
            a.set_neg(idx(x), idx(y));
        } else if (tok == "join" && (ls >> x >> y >> z)) {
            a.set_join(idx(x), idx(y), idx(z));
        } else if (tok == "meet" && (ls >> x >> y >> z)) {
            a.set_meet(idx(x), idx(y), idx(z));
        } else {
            throw std::runtime_error("pba line " + std::to_string(lineno) + ": bad record");
        }
    }
    if (a.zero() < 0 || a.one() < 0)
        throw std::runtime_error("pba file must declare zero and one");
    // Inferred commeasurability: reflexivity is built in; 0 and 1 commute
    // with everything (symmetry is handled by set_comm).
    for (int i = 0; i < a.size(); ++i) {
        a.set_comm(a.zero(), i);
        a.set_comm(a.one(), i);
    }
    return a;
}

std::string print_pba(const FinitePBA& a) {
    std::ostringstream os;
    os << "# " << kVersionString << "\n";
    for (int i = 0; i < a.size(); ++i) os << "elem " << a.name(i) << "\n";
    os << "zero " << a.name(a.zero()) << "\n";
    os << "one " << a.name(a.one()) << "\n";
    for (int i = 0; i < a.size(); ++i)
        if (a.neg_defined(i)) os << "neg " << a.name(i) << ' ' << a.name(a.neg(i)) << "\n";
    for (int i = 0; i < a.size(); ++i)
        for (int j = i; j < a.size(); ++j) {
            if (!a.comm(i, j)) continue;
            os << "comm " << a.name(i) << ' ' << a.name(j) << "\n";
            if (a.join_defined(i, j))
                os << "join " << a.name(i) << ' ' << a.name(j) << ' ' << a.name(a.join(i, j)) << "\n";
            if (a.meet_defined(i, j))
                os << "meet " << a.name(i) << ' ' << a.name(j) << ' ' << a.name(a.meet(i, j)) << "\n";
        }
    return os.str();
}

std::map<std::string, int> parse_assignment(const std::string& text, const FinitePBA& a) {
    std::map<std::string, int> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string var, elem;
        if (!(ls >> var) || var[0] == '#') continue;
        if (!(ls >> elem))
            throw std::runtime_error("assignment line " + std::to_string(lineno) + ": missing element");
        int i = a.index_of(elem);
        if (i < 0)
            throw std::runtime_error("assignment line " + std::to_string(lineno) + ": unknown element '" + elem + "'");
        out[var] = i;
    }
    return out;
}

}  // namespace pbsat

#include "pbsat/graph.hpp"

#include "pbsat/formula.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pbsat {

int Graph::add_vertex(const std::string& label) {
    if (index_of(label) >= 0)
        throw std::invalid_argument("duplicate vertex label '" + label + "'");
    labels_.push_back(label);
    for (auto& row : adj_) row.push_back(0);
    adj_.emplace_back(labels_.size(), 0);
    return static_cast<int>(labels_.size()) - 1;
}

int Graph::ensure_vertex(const std::string& label) {
    int i = index_of(label);
    return i >= 0 ? i : add_vertex(label);
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= size() || v >= size())
        throw std::out_of_range("edge endpoint out of range");
    if (u == v) return;
    adj_[u][v] = adj_[v][u] = 1;
}

int Graph::edge_count() const {
    int c = 0;
    for (int u = 0; u < size(); ++u)
        for (int v = u + 1; v < size(); ++v) c += adj_[u][v];
    return c;
}

int Graph::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    return -1;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u)
        for (int v = u + 1; v < size(); ++v)
            if (adj_[u][v]) out.emplace_back(u, v);
    return out;
}

Graph Graph::complete(int n) {
    Graph g;
    for (int i = 1; i <= n; ++i) g.add_vertex("v" + std::to_string(i));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// ---- Bron-Kerbosch ------------------------------------------------------

namespace {

void bron_kerbosch(const Graph& g, std::vector<int>& r, std::vector<int> p,
                   std::vector<int> x, std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
        out.push_back(r);
        return;
    }
    // Pivot: vertex of P u X with most neighbours in P.
    int pivot = -1, best = -1;
    for (int cand : p) {
        int deg = 0;
        for (int w : p) deg += g.adjacent(cand, w);
        if (deg > best) best = deg, pivot = cand;
    }
    for (int cand : x) {
        int deg = 0;
        for (int w : p) deg += g.adjacent(cand, w);
        if (deg > best) best = deg, pivot = cand;
    }
    std::vector<int> candidates;
    for (int v : p)
        if (pivot < 0 || !g.adjacent(pivot, v)) candidates.push_back(v);

    for (int v : candidates) {
        std::vector<int> p2, x2;
        for (int w : p)
            if (g.adjacent(v, w)) p2.push_back(w);
        for (int w : x)
            if (g.adjacent(v, w)) x2.push_back(w);
        r.push_back(v);
        bron_kerbosch(g, r, std::move(p2), std::move(x2), out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
    std::vector<std::vector<int>> out;
    if (g.size() == 0) return out;  // no vertices, no cliques
    std::vector<int> r, p(g.size()), x;
    for (int i = 0; i < g.size(); ++i) p[i] = i;
    bron_kerbosch(g, r, std::move(p), std::move(x), out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

int clique_number(const Graph& g) {
    int best = 0;
    for (const auto& c : maximal_cliques(g)) best = std::max<int>(best, c.size());
    return best;
}

std::vector<std::vector<int>> maximum_cliques(const Graph& g) {
    auto all = maximal_cliques(g);
    size_t omega = 0;
    for (const auto& c : all) omega = std::max(omega, c.size());
    std::vector<std::vector<int>> out;
    for (auto& c : all)
        if (c.size() == omega) out.push_back(std::move(c));
    return out;
}

bool is_facet(const Graph& g, int d) {
    if (g.size() == 0) return false;
    auto all = maximal_cliques(g);
    for (const auto& c : all)
        if (static_cast<int>(c.size()) != d) return false;
    return !all.empty();
}

// ---- file format --------------------------------------------------------

Graph parse_graph(const std::string& text) {
    Graph g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok == "v") {
            std::string label;
            if (!(ls >> label))
                throw std::runtime_error("graph line " + std::to_string(lineno) + ": missing label");
            g.add_vertex(label);
        } else if (tok == "e") {
            std::string a, b;
            if (!(ls >> a >> b))
                throw std::runtime_error("graph line " + std::to_string(lineno) + ": e needs two labels");
            int u = g.index_of(a), v = g.index_of(b);
            if (u < 0 || v < 0)
                throw std::runtime_error("graph line " + std::to_string(lineno) + ": unknown vertex");
            g.add_edge(u, v);
        } else {
            throw std::runtime_error("graph line " + std::to_string(lineno) + ": unknown record '" + tok + "'");
        }
    }
    return g;
}

std::string print_graph(const Graph& g) {
    std::ostringstream os;
    os << "# " << kVersionString << "\n";
    for (int i = 0; i < g.size(); ++i) os << "v " << g.label(i) << "\n";
    for (auto [u, v] : g.edges()) os << "e " << g.label(u) << ' ' << g.label(v) << "\n";
    return os.str();
}

}  // namespace pbsat

#ifndef PBSAT_GRAPH_HPP
#define PBSAT_GRAPH_HPP

#include <string>
#include <vector>

namespace pbsat {

// Simple undirected graph (no loops, no multi-edges) with labelled vertices.
class Graph {
public:
    int add_vertex(const std::string& label);
    // Returns the existing index when the label is already present.
    int ensure_vertex(const std::string& label);
    void add_edge(int u, int v);  // loops are ignored
    bool adjacent(int u, int v) const { return adj_[u][v] != 0; }
    int size() const { return static_cast<int>(labels_.size()); }
    int edge_count() const;
    const std::string& label(int v) const { return labels_[v]; }
    int index_of(const std::string& label) const;  // -1 if absent
    const std::vector<std::string>& labels() const { return labels_; }

    // All edges {u,v} with u < v, lexicographic by index.
    std::vector<std::pair<int, int>> edges() const;

    static Graph complete(int n);  // vertices "v1".."vn"

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<char>> adj_;
};

// Maximal cliques via Bron-Kerbosch with pivoting.  Each clique is sorted
// ascending; the list is sorted lexicographically.  Deterministic.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

// Size of a maximum clique (0 for the empty graph).
int clique_number(const Graph& g);

// Omega(G): all maximum cliques, same ordering conventions as above.
std::vector<std::vector<int>> maximum_cliques(const Graph& g);

// A d-facet graph: non-empty, and every maximal clique has exactly d
// vertices (so every maximal clique is maximum and omega = d).
bool is_facet(const Graph& g, int d);

// Graph file format:
//   # comment
//   v <label>
//   e <label> <label>
// Unknown labels in `e` lines are an error.
Graph parse_graph(const std::string& text);
std::string print_graph(const Graph& g);

}  // namespace pbsat

#endif  // PBSAT_GRAPH_HPP

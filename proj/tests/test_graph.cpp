#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "pbsat/graph.hpp"

using namespace pbsat;

namespace {

// Brute-force maximal cliques for cross-checking Bron-Kerbosch.
std::vector<std::vector<int>> brute_maximal_cliques(const Graph& g) {
    int n = g.size();
    std::vector<std::vector<int>> cliques;
    for (int mask = 1; mask < (1 << n); ++mask) {
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) members.push_back(i);
        bool clique = true;
        for (size_t i = 0; i < members.size() && clique; ++i)
            for (size_t j = i + 1; j < members.size(); ++j)
                if (!g.adjacent(members[i], members[j])) {
                    clique = false;
                    break;
                }
        if (!clique) continue;
        bool maximal = true;
        for (int v = 0; v < n && maximal; ++v) {
            if (mask & (1 << v)) continue;
            bool extends = true;
            for (int m : members)
                if (!g.adjacent(v, m)) {
                    extends = false;
                    break;
                }
            if (extends) maximal = false;
        }
        if (maximal) cliques.push_back(members);
    }
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

}  // namespace

TEST_CASE("graph basics") {
    Graph g;
    int a = g.add_vertex("a");
    int b = g.add_vertex("b");
    int c = g.add_vertex("c");
    g.add_edge(a, b);
    g.add_edge(b, c);
    g.add_edge(b, b);  // loop: ignored
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(a, b));
    CHECK(g.adjacent(b, a));
    CHECK_FALSE(g.adjacent(a, c));
    CHECK_FALSE(g.adjacent(b, b));
    CHECK(g.index_of("b") == b);
    CHECK(g.index_of("zz") == -1);
    CHECK(g.label(c) == "c");
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{a, b}, {b, c}});

    CHECK_THROWS_AS(g.add_vertex("a"), std::invalid_argument);
    CHECK(g.ensure_vertex("a") == a);
    CHECK(g.ensure_vertex("d") == 3);
}

TEST_CASE("complete graphs") {
    auto k4 = Graph::complete(4);
    CHECK(k4.size() == 4);
    CHECK(k4.edge_count() == 6);
    CHECK(k4.label(0) == "v1");
    CHECK(k4.label(3) == "v4");
    CHECK(clique_number(k4) == 4);
    CHECK(maximal_cliques(k4) == std::vector<std::vector<int>>{{0, 1, 2, 3}});
}

TEST_CASE("maximal cliques on small graphs") {
    // Path a-b-c: maximal cliques are the edges.
    Graph p3;
    p3.add_vertex("a");
    p3.add_vertex("b");
    p3.add_vertex("c");
    p3.add_edge(0, 1);
    p3.add_edge(1, 2);
    CHECK(maximal_cliques(p3) == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
    CHECK(clique_number(p3) == 2);
    CHECK(maximum_cliques(p3) == maximal_cliques(p3));
    CHECK(is_facet(p3, 2));
    CHECK_FALSE(is_facet(p3, 3));

    // Triangle with a pendant vertex: cliques of sizes 3 and 2.
    Graph tp;
    for (const char* l : {"a", "b", "c", "d"}) tp.add_vertex(l);
    tp.add_edge(0, 1);
    tp.add_edge(0, 2);
    tp.add_edge(1, 2);
    tp.add_edge(2, 3);
    CHECK(maximal_cliques(tp) == std::vector<std::vector<int>>{{0, 1, 2}, {2, 3}});
    CHECK(clique_number(tp) == 3);
    CHECK(maximum_cliques(tp) == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK_FALSE(is_facet(tp, 3));  // the {c,d} clique is too small

    // Empty and edgeless graphs.
    Graph empty;
    CHECK(clique_number(empty) == 0);
    CHECK(maximal_cliques(empty).empty());
    CHECK_FALSE(is_facet(empty, 1));

    Graph lone;
    lone.add_vertex("x");
    CHECK(maximal_cliques(lone) == std::vector<std::vector<int>>{{0}});
    CHECK(is_facet(lone, 1));
}

TEST_CASE("Bron-Kerbosch agrees with brute force on random graphs") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);  // up to 9 vertices
        Graph g;
        for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i + 1));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) g.add_edge(i, j);
        CHECK(maximal_cliques(g) == brute_maximal_cliques(g));
    }
}

TEST_CASE("graph file format") {
    Graph g;
    g.add_vertex("a");
    g.add_vertex("b_2");
    g.add_edge(0, 1);
    std::string text = print_graph(g);
    CHECK(text.find("v a\n") != std::string::npos);
    CHECK(text.find("e a b_2\n") != std::string::npos);

    auto g2 = parse_graph(text);
    CHECK(g2.size() == 2);
    CHECK(g2.adjacent(g2.index_of("a"), g2.index_of("b_2")));

    auto g3 = parse_graph("# hello\nv x\nv y\nv z\ne x y\n");
    CHECK(g3.size() == 3);
    CHECK(g3.edge_count() == 1);

    CHECK_THROWS_AS(parse_graph("e a b\n"), std::runtime_error);   // unknown labels
    CHECK_THROWS_AS(parse_graph("w what\n"), std::runtime_error);  // bad record
}

#include "logvor/error.hpp"
#include "logvor/graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace logvor;

namespace {

Graph random_graph(int m, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return Graph(m, edges);
}

IndexSet members(unsigned mask, int m) {
    IndexSet out;
    for (int v = 0; v < m; ++v)
        if (mask >> v & 1U) out.push_back(v);
    return out;
}

bool clique_by_edges(const Graph& g, const IndexSet& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!g.adjacent(vs[a], vs[b])) return false;
    return true;
}

std::vector<IndexSet> brute_maximal_cliques(const Graph& g) {
    const int m = g.size();
    std::vector<IndexSet> out;
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        const IndexSet vs = members(mask, m);
        if (!clique_by_edges(g, vs)) continue;
        bool maximal = true;
        for (int v = 0; v < m && maximal; ++v) {
            if (mask >> v & 1U) continue;
            if (clique_by_edges(g, members(mask | (1U << v), m))) maximal = false;
        }
        if (maximal) out.push_back(vs);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Chordal iff no vertex subset of size >= 4 induces a cycle.
bool brute_chordal(const Graph& g) {
    const int m = g.size();
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        const IndexSet vs = members(mask, m);
        if (vs.size() < 4) continue;
        bool all_degree_two = true;
        for (int v : vs) {
            int deg = 0;
            for (int w : vs) deg += g.adjacent(v, w) ? 1 : 0;
            if (deg != 2) all_degree_two = false;
        }
        if (!all_degree_two) continue;
        // Connected 2-regular induced subgraph is a chordless cycle.
        std::vector<int> seen{vs.front()};
        for (std::size_t k = 0; k < seen.size(); ++k)
            for (int w : vs)
                if (g.adjacent(seen[k], w) && std::find(seen.begin(), seen.end(), w) == seen.end()) seen.push_back(w);
        if (seen.size() == vs.size()) return false;
    }
    return true;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::ParseError;
}

} // namespace

TEST_CASE("graph construction checks") {
    CHECK(kind_of([] { Graph(3, {{0, 3}}); }) == ErrorKind::IndexOutOfRange);
    CHECK(kind_of([] { Graph(3, {{1, 1}}); }) == ErrorKind::OutOfRange);
    const Graph g(3, {{2, 0}, {0, 2}, {1, 0}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
}

TEST_CASE("maximal cliques examples") {
    CHECK(maximal_cliques(Graph::path(4)) == std::vector<IndexSet>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(maximal_cliques(Graph::complete(4)) == std::vector<IndexSet>{{0, 1, 2, 3}});
    CHECK(maximal_cliques(Graph::cycle(4)) == std::vector<IndexSet>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
}

TEST_CASE("maximal cliques match brute force on small graphs") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = random_graph(1 + trial % 6, 0.2 + 0.6 * (trial % 5) / 4.0, rng);
        CHECK(maximal_cliques(g) == brute_maximal_cliques(g));
    }
}

TEST_CASE("chordality") {
    CHECK(is_chordal(Graph::path(4)).chordal);
    CHECK_FALSE(is_chordal(Graph::cycle(4)).chordal);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = random_graph(2 + trial % 6, 0.5, rng);
        const ChordalityResult r = is_chordal(g);
        CHECK(r.chordal == brute_chordal(g));
        if (r.chordal) CHECK(r.elimination_order.size() == static_cast<std::size_t>(g.size()));
    }
}

TEST_CASE("reducible decompositions") {
    const auto path = find_reducible_decomposition(Graph::path(4));
    REQUIRE(path);
    CHECK(path->U == IndexSet{0, 1});
    CHECK(path->T == IndexSet{1});
    CHECK(path->W == IndexSet{1, 2, 3});
    CHECK_FALSE(find_reducible_decomposition(Graph::complete(4)));
    CHECK_FALSE(find_reducible_decomposition(Graph::cycle(4)));

    const auto split = find_reducible_decomposition(Graph(4, {{0, 1}, {2, 3}}));
    REQUIRE(split);
    CHECK(split->T.empty());
    CHECK(split->U == IndexSet{0, 1});
}

TEST_CASE("decompositions are valid and recurse to cliques on chordal graphs") {
    std::mt19937_64 rng(12);
    int chordal_seen = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = random_graph(2 + trial % 6, 0.55, rng);
        const auto dec = find_reducible_decomposition(g);
        if (dec) {
            CHECK(is_valid_decomposition(g, *dec));
            CHECK(g.is_clique(dec->T));
        }
        if (!is_chordal(g).chordal) continue;
        ++chordal_seen;
        std::vector<IndexSet> pending{members((1U << g.size()) - 1, g.size())};
        int steps = 0;
        while (!pending.empty() && steps < 100) {
            ++steps;
            const IndexSet vs = pending.back();
            pending.pop_back();
            const Graph sub = g.induced(vs);
            if (sub.is_complete()) continue;
            const auto d = find_reducible_decomposition(sub);
            REQUIRE(d);
            IndexSet u, w;
            for (int v : d->U) u.push_back(vs[v]);
            for (int v : d->W) w.push_back(vs[v]);
            pending.push_back(u);
            pending.push_back(w);
        }
        CHECK(pending.empty());
    }
    CHECK(chordal_seen > 20);
}

TEST_CASE("treks") {
    const Digraph d(4, {{0, 1}, {1, 3}, {2, 3}});
    CHECK(list_treks(d, 0, 2).empty());
    const auto t14 = list_treks(d, 0, 3);
    REQUIRE(t14.size() == 1);
    CHECK(t14[0].top == 0);
    CHECK(t14[0].up.empty());
    CHECK(t14[0].down == std::vector<Edge>{{0, 1}, {1, 3}});
    const auto t22 = list_treks(Digraph(2, {{0, 1}}), 1, 1);
    REQUIRE(t22.size() == 1);
    CHECK(t22[0].top == 1);
    CHECK(t22[0].up.empty());
    CHECK(t22[0].down.empty());
}

TEST_CASE("topological order") {
    CHECK(topological_order(Digraph(4, {{0, 1}, {1, 3}, {2, 3}})) == std::vector<int>{0, 1, 2, 3});
    CHECK(kind_of([] { topological_order(Digraph(2, {{1, 0}})); }) == ErrorKind::NotTopological);
    std::mt19937_64 rng(13);
    std::bernoulli_distribution coin(0.4);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + trial % 6;
        std::vector<Edge> arcs;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (coin(rng)) arcs.emplace_back(i, j);
        const Digraph dag(m, arcs);
        CHECK(dag.is_acyclic());
        std::vector<int> id(m);
        std::iota(id.begin(), id.end(), 0);
        CHECK(topological_order(dag) == id);
    }
    CHECK_FALSE(Digraph(3, {{0, 1}, {1, 2}, {2, 0}}).is_acyclic());
}

#pragma once

#include "logvor/sym_mat.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace logvor {

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..m-1. Edges are stored as (i,j)
/// with i < j, sorted and deduplicated.
class Graph {
public:
    Graph() = default;
    Graph(int m, std::vector<Edge> edges);

    static Graph complete(int m);
    static Graph path(int m);
    static Graph cycle(int m);

    [[nodiscard]] int size() const { return m_; }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] bool adjacent(int i, int j) const;
    [[nodiscard]] const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    [[nodiscard]] bool is_clique(const IndexSet& vs) const;
    [[nodiscard]] bool is_complete() const;

    /// Subgraph induced on `vs`, relabeled 0..|vs|-1 in the order given.
    [[nodiscard]] Graph induced(const IndexSet& vs) const;

    /// Connected components of the graph with `removed` deleted, each sorted,
    /// ordered by smallest vertex.
    [[nodiscard]] std::vector<IndexSet> components_without(const IndexSet& removed) const;

private:
    int m_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Directed graph on vertices 0..m-1. Arcs are checked for range and loops
/// only; acyclicity and topological labeling are validated by the
/// operations that need them.
class Digraph {
public:
    Digraph() = default;
    Digraph(int m, std::vector<Edge> arcs);

    [[nodiscard]] int size() const { return m_; }
    [[nodiscard]] const std::vector<Edge>& arcs() const { return arcs_; }
    [[nodiscard]] const std::vector<int>& parents(int v) const { return parents_[v]; }
    [[nodiscard]] const std::vector<int>& children(int v) const { return children_[v]; }
    /// Position of arc (i,j) in arcs(), or -1.
    [[nodiscard]] int arc_index(int i, int j) const;
    [[nodiscard]] bool is_acyclic() const;

private:
    int m_ = 0;
    std::vector<Edge> arcs_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
};

/// Witness (U, T, W) of a reducible clique complex: U and W cover V,
/// meet in the clique T, and no edge joins U\T to W\T.
struct Decomposition {
    IndexSet U;
    IndexSet T;
    IndexSet W;
};

bool is_valid_decomposition(const Graph& g, const Decomposition& d);

/// All inclusion-maximal cliques, each sorted, list sorted lexicographically.
std::vector<IndexSet> maximal_cliques(const Graph& g);

struct ChordalityResult {
    bool chordal = false;
    /// Perfect elimination order (reverse maximum cardinality search); empty
    /// when the graph is not chordal.
    std::vector<int> elimination_order;
};

ChordalityResult is_chordal(const Graph& g);

/// Clique separator of minimum size, lexicographically smallest among those;
/// U\T is the component holding the smallest vertex outside T. Returns
/// nullopt when no clique separates the graph (complete graphs, chordless
/// cycles, ...). The empty clique separates a disconnected graph.
std::optional<Decomposition> find_reducible_decomposition(const Graph& g);

/// Collider-free path between two vertices: up from `i` to `top` against
/// the arrows, then down to `j`. Both edge lists run outward from the top
/// and hold arcs in their DAG orientation.
struct Trek {
    int top = 0;
    std::vector<Edge> up;    // path top -> ... -> i
    std::vector<Edge> down;  // path top -> ... -> j

    friend bool operator==(const Trek&, const Trek&) = default;
    friend auto operator<=>(const Trek&, const Trek&) = default;
};

/// Simple treks between i and j (the two sides share only the top vertex).
/// For i == j only the trivial trek is reported.
std::vector<Trek> list_treks(const Digraph& dag, int i, int j);

/// Identity permutation when every arc (i,j) has i < j; throws NotTopological otherwise.
std::vector<int> topological_order(const Digraph& dag);

} // namespace logvor

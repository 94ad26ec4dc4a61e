#include "logvor/graph.hpp"

#include "logvor/error.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace logvor {

namespace {

void check_edge(int m, const Edge& e, const char* what) {
    if (e.first < 0 || e.first >= m || e.second < 0 || e.second >= m) {
        throw Error(ErrorKind::IndexOutOfRange,
                    std::string(what) + " endpoint out of range (" + std::to_string(e.first) +
                        ", " + std::to_string(e.second) + ")");
    }
    if (e.first == e.second) throw Error(ErrorKind::OutOfRange, std::string(what) + " is a loop");
}

} // namespace

Graph::Graph(int m, std::vector<Edge> edges) : m_(m), adj_(m) {
    if (m < 0) throw Error(ErrorKind::OutOfRange, "negative vertex count");
    for (auto& e : edges) {
        check_edge(m, e, "edge");
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const auto& [i, j] : edges_) {
        adj_[i].push_back(j);
        adj_[j].push_back(i);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Graph Graph::complete(int m) {
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) e.emplace_back(i, j);
    return Graph(m, std::move(e));
}

Graph Graph::path(int m) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < m; ++i) e.emplace_back(i, i + 1);
    return Graph(m, std::move(e));
}

Graph Graph::cycle(int m) {
    std::vector<Edge> e;
    for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
    return Graph(m, std::move(e));
}

bool Graph::adjacent(int i, int j) const {
    return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
}

bool Graph::is_clique(const IndexSet& vs) const {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!adjacent(vs[a], vs[b])) return false;
    return true;
}

bool Graph::is_complete() const {
    return static_cast<long>(edges_.size()) == static_cast<long>(m_) * (m_ - 1) / 2;
}

Graph Graph::induced(const IndexSet& vs) const {
    std::vector<int> local(m_, -1);
    for (std::size_t k = 0; k < vs.size(); ++k) local[vs[k]] = static_cast<int>(k);
    std::vector<Edge> e;
    for (const auto& [i, j] : edges_) {
        if (local[i] >= 0 && local[j] >= 0) e.emplace_back(local[i], local[j]);
    }
    return Graph(static_cast<int>(vs.size()), std::move(e));
}

std::vector<IndexSet> Graph::components_without(const IndexSet& removed) const {
    std::vector<int> label(m_, -1);
    for (int v : removed) label[v] = -2;
    std::vector<IndexSet> comps;
    for (int s = 0; s < m_; ++s) {
        if (label[s] != -1) continue;
        IndexSet comp;
        std::vector<int> stack{s};
        label[s] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : adj_[v]) {
                if (label[w] == -1) {
                    label[w] = label[s];
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

Digraph::Digraph(int m, std::vector<Edge> arcs) : m_(m), parents_(m), children_(m) {
    if (m < 0) throw Error(ErrorKind::OutOfRange, "negative vertex count");
    for (const auto& a : arcs) check_edge(m, a, "arc");
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arcs_ = std::move(arcs);
    for (const auto& [i, j] : arcs_) {
        parents_[j].push_back(i);
        children_[i].push_back(j);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());
    for (auto& c : children_) std::sort(c.begin(), c.end());
}

int Digraph::arc_index(int i, int j) const {
    const auto it = std::lower_bound(arcs_.begin(), arcs_.end(), Edge{i, j});
    if (it == arcs_.end() || *it != Edge{i, j}) return -1;
    return static_cast<int>(it - arcs_.begin());
}

bool Digraph::is_acyclic() const {
    // Kahn's algorithm.
    std::vector<int> indeg(m_, 0);
    for (const auto& a : arcs_) ++indeg[a.second];
    std::vector<int> ready;
    for (int v = 0; v < m_; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        const int v = ready.back();
        ready.pop_back();
        ++seen;
        for (int w : children_[v])
            if (--indeg[w] == 0) ready.push_back(w);
    }
    return seen == m_;
}

bool is_valid_decomposition(const Graph& g, const Decomposition& d) {
    const int m = g.size();
    std::vector<int> in_u(m, 0), in_w(m, 0), in_t(m, 0);
    for (int v : d.U) in_u[v] = 1;
    for (int v : d.W) in_w[v] = 1;
    for (int v : d.T) in_t[v] = 1;
    for (int v = 0; v < m; ++v) {
        if (!in_u[v] && !in_w[v]) return false;              // U u W = V
        if ((in_u[v] && in_w[v]) != static_cast<bool>(in_t[v])) return false;  // U n W = T
    }
    if (!g.is_clique(d.T)) return false;
    for (const auto& [i, j] : g.edges()) {
        const bool iu = in_u[i] && !in_t[i], jw = in_w[j] && !in_t[j];
        const bool iw = in_w[i] && !in_t[i], ju = in_u[j] && !in_t[j];
        if ((iu && jw) || (iw && ju)) return false;
    }
    return d.U.size() > d.T.size() && d.W.size() > d.T.size();
}

std::vector<IndexSet> maximal_cliques(const Graph& g) {
    std::vector<IndexSet> out;
    // Bron-Kerbosch with pivoting.
    std::function<void(IndexSet&, IndexSet, IndexSet)> expand = [&](IndexSet& r, IndexSet p,
                                                                   IndexSet x) {
        if (p.empty() && x.empty()) {
            IndexSet c = r;
            std::sort(c.begin(), c.end());
            out.push_back(std::move(c));
            return;
        }
        int pivot = -1;
        std::size_t best = 0;
        for (const IndexSet* set : {&p, &x}) {
            for (int u : *set) {
                std::size_t cnt = 0;
                for (int v : p) cnt += g.adjacent(u, v);
                if (pivot < 0 || cnt > best) {
                    pivot = u;
                    best = cnt;
                }
            }
        }
        const IndexSet candidates = p;
        for (int v : candidates) {
            if (g.adjacent(pivot, v)) continue;
            IndexSet p2, x2;
            for (int w : p)
                if (g.adjacent(v, w)) p2.push_back(w);
            for (int w : x)
                if (g.adjacent(v, w)) x2.push_back(w);
            r.push_back(v);
            expand(r, std::move(p2), std::move(x2));
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
    };
    IndexSet r, all(g.size());
    std::iota(all.begin(), all.end(), 0);
    if (g.size() > 0) expand(r, all, {});
    std::sort(out.begin(), out.end());
    return out;
}

ChordalityResult is_chordal(const Graph& g) {
    const int m = g.size();
    // Maximum cardinality search; ties go to the smallest vertex.
    std::vector<int> weight(m, 0), visit;
    std::vector<char> numbered(m, 0);
    visit.reserve(m);
    for (int step = 0; step < m; ++step) {
        int best = -1;
        for (int v = 0; v < m; ++v)
            if (!numbered[v] && (best < 0 || weight[v] > weight[best])) best = v;
        numbered[best] = 1;
        visit.push_back(best);
        for (int w : g.neighbors(best))
            if (!numbered[w]) ++weight[w];
    }
    std::vector<int> order(visit.rbegin(), visit.rend());
    std::vector<int> pos(m);
    for (int k = 0; k < m; ++k) pos[order[k]] = k;
    for (int v : order) {
        IndexSet later;
        for (int w : g.neighbors(v))
            if (pos[w] > pos[v]) later.push_back(w);
        if (!g.is_clique(later)) return {};
    }
    return {true, std::move(order)};
}

namespace {

/// Every clique of g (including the empty one), ordered by size then lexicographically.
std::vector<IndexSet> all_cliques(const Graph& g) {
    std::vector<IndexSet> out{{}};
    std::function<void(IndexSet&, int)> grow = [&](IndexSet& c, int next) {
        for (int v = next; v < g.size(); ++v) {
            bool ok = true;
            for (int u : c) ok = ok && g.adjacent(u, v);
            if (!ok) continue;
            c.push_back(v);
            out.push_back(c);
            grow(c, v + 1);
            c.pop_back();
        }
    };
    IndexSet c;
    grow(c, 0);
    std::stable_sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

IndexSet merged(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

std::optional<Decomposition> find_reducible_decomposition(const Graph& g) {
    for (const IndexSet& t : all_cliques(g)) {
        const auto comps = g.components_without(t);
        if (comps.size() < 2) continue;
        IndexSet rest;
        for (std::size_t k = 1; k < comps.size(); ++k) rest = merged(rest, comps[k]);
        return Decomposition{merged(comps[0], t), t, merged(rest, t)};
    }
    return std::nullopt;
}

std::vector<Trek> list_treks(const Digraph& dag, int i, int j) {
    const int m = dag.size();
    if (i < 0 || i >= m || j < 0 || j >= m) throw Error(ErrorKind::IndexOutOfRange, "trek endpoint");
    if (i == j) return {Trek{i, {}, {}}};

    // Directed paths from every vertex to a target, as vertex sequences.
    auto paths_to = [&](int top, int target) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur{top};
        std::function<void(int)> dfs = [&](int v) {
            if (v == target) {
                out.push_back(cur);
                return;
            }
            for (int w : dag.children(v)) {
                cur.push_back(w);
                dfs(w);
                cur.pop_back();
            }
        };
        dfs(top);
        return out;
    };
    auto to_edges = [](const std::vector<int>& p) {
        std::vector<Edge> e;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) e.emplace_back(p[k], p[k + 1]);
        return e;
    };

    std::vector<Trek> treks;
    for (int top = 0; top < m; ++top) {
        const auto ups = paths_to(top, i);
        if (ups.empty()) continue;
        const auto downs = paths_to(top, j);
        for (const auto& up : ups) {
            for (const auto& down : downs) {
                std::vector<char> used(m, 0);
                for (std::size_t k = 1; k < up.size(); ++k) used[up[k]] = 1;
                bool simple = true;
                for (std::size_t k = 1; k < down.size(); ++k) simple = simple && !used[down[k]];
                if (simple) treks.push_back(Trek{top, to_edges(up), to_edges(down)});
            }
        }
    }
    std::sort(treks.begin(), treks.end());
    return treks;
}

std::vector<int> topological_order(const Digraph& dag) {
    for (const auto& [i, j] : dag.arcs()) {
        if (i >= j) {
            throw Error(ErrorKind::NotTopological,
                        "arc (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") does not respect the vertex labeling");
        }
    }
    std::vector<int> id(dag.size());
    std::iota(id.begin(), id.end(), 0);
    return id;
}

} // namespace logvor

#include "spinlab/graph.hpp"

#include "spinlab/parallel.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace spinlab {

namespace {

std::vector<int> random_permutation(int m, std::mt19937_64& rng) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    // Fisher-Yates with explicit bounded draws (std::shuffle is not portable
    // across standard libraries).
    for (int i = m - 1; i > 0; --i) {
        std::uniform_int_distribution<int> d(0, i);
        std::swap(p[i], p[d(rng)]);
    }
    return p;
}

bool is_permutation_of(const std::vector<int>& p, int m) {
    if (static_cast<int>(p.size()) != m) return false;
    std::vector<char> seen(m, 0);
    for (int v : p) {
        if (v < 0 || v >= m || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

}  // namespace

std::vector<std::pair<int, int>> BipartiteRegularGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& m : matchings)
        for (int i = 0; i < static_cast<int>(m.size()); ++i) out.emplace_back(i, m[i]);
    return out;
}

std::vector<int> BipartiteRegularGraph::degrees() const {
    std::vector<int> deg(vertex_count(), 0);
    for (auto [a, b] : edges()) {
        ++deg[a];
        ++deg[side() + b];
    }
    return deg;
}

void validate(const BipartiteRegularGraph& g) {
    if (g.n < 1 || g.r < 0 || g.delta < 1) throw ArgumentError("graph: need n >= 1, r >= 0, delta >= 1");
    const std::size_t expect = static_cast<std::size_t>(g.delta);
    if (g.matchings.size() != expect) throw ArgumentError("graph: expected delta matchings");
    for (std::size_t m = 0; m < g.matchings.size(); ++m) {
        const bool partial = g.r > 0 && m + 1 == g.matchings.size();
        if (!is_permutation_of(g.matchings[m], partial ? g.n : g.side()))
            throw ArgumentError("graph: matching " + std::to_string(m) + " is not a bijection on its domain");
    }
}

BipartiteRegularGraph sample_graph(int n, int r, int delta, std::uint64_t seed) {
    if (n < 1 || r < 0 || n <= r) throw ArgumentError("sample_graph: need n > r >= 0");
    if (delta < 1 || (r > 0 && delta < 2)) throw ArgumentError("sample_graph: delta too small");
    auto rng = make_rng(seed);
    BipartiteRegularGraph g;
    g.n = n;
    g.r = r;
    g.delta = delta;
    const int full = r == 0 ? delta : delta - 1;
    for (int m = 0; m < full; ++m) g.matchings.push_back(random_permutation(n + r, rng));
    if (r > 0) g.matchings.push_back(random_permutation(n, rng));
    return g;
}

void write_graph(std::ostream& os, const BipartiteRegularGraph& g) {
    os << g.n << ' ' << g.r << ' ' << g.delta << '\n';
    for (const auto& m : g.matchings) {
        for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << m[i];
        os << '\n';
    }
}

BipartiteRegularGraph read_graph(std::istream& is) {
    BipartiteRegularGraph g;
    std::string line;
    if (!std::getline(is, line)) throw ArgumentError("graph file: missing header");
    std::istringstream hs(line);
    if (!(hs >> g.n >> g.r >> g.delta)) throw ArgumentError("graph file: bad header");
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<int> m;
        int v;
        while (ls >> v) m.push_back(v);
        if (!m.empty()) g.matchings.push_back(std::move(m));
    }
    validate(g);
    return g;
}

StructuralReport structural_check(const BipartiteRegularGraph& g) {
    StructuralReport rep;
    const int s = g.side();
    auto is_w = [&](int global) { return (global % s) >= g.n; };
    std::set<std::pair<int, int>> seen;
    rep.simple = true;
    rep.no_w_cross_edge = true;
    std::vector<int> w_neighbours(g.vertex_count(), 0);
    for (auto [a, b] : g.edges()) {
        if (!seen.insert({a, b}).second) rep.simple = false;
        const int gb = s + b;
        if (is_w(a) && is_w(gb)) rep.no_w_cross_edge = false;
        if (is_w(gb)) ++w_neighbours[a];
        if (is_w(a)) ++w_neighbours[gb];
    }
    rep.no_double_w_neighbor = std::all_of(w_neighbours.begin(), w_neighbours.end(), [](int c) { return c <= 1; });
    return rep;
}

BipartiteRegularGraph sample_screened_gadget(int n, int r, int delta, std::uint64_t seed, int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        auto g = sample_graph(n, r, delta, seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(t));
        if (structural_check(g).ok()) return g;
    }
    throw BudgetError("gadget screening: no admissible graph in " + std::to_string(max_tries) + " draws");
}

SimpleGraph to_simple_graph(const BipartiteRegularGraph& g) {
    SimpleGraph out;
    out.vertices = g.vertex_count();
    for (auto [a, b] : g.edges()) out.edges.emplace_back(a, g.side() + b);
    return out;
}

std::vector<int> degree_sequence(const SimpleGraph& g) {
    std::vector<int> deg(g.vertices, 0);
    for (auto [a, b] : g.edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

bool is_simple(const SimpleGraph& g) {
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a == b) return false;
        if (!seen.insert(std::minmax(a, b)).second) return false;
    }
    return true;
}

bool is_regular(const SimpleGraph& g, int delta) {
    auto deg = degree_sequence(g);
    return std::all_of(deg.begin(), deg.end(), [&](int d) { return d == delta; });
}

bool is_triangle_free(const SimpleGraph& g) {
    std::vector<std::set<int>> adj(g.vertices);
    for (auto [a, b] : g.edges) {
        if (a == b) continue;
        adj[a].insert(b);
        adj[b].insert(a);
    }
    for (auto [a, b] : g.edges) {
        if (a == b) continue;
        const auto& small = adj[a].size() < adj[b].size() ? adj[a] : adj[b];
        const auto& large = adj[a].size() < adj[b].size() ? adj[b] : adj[a];
        for (int c : small)
            if (c != a && c != b && large.count(c)) return false;
    }
    return true;
}

}  // namespace spinlab

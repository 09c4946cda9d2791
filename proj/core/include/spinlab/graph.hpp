#pragma once

#include "spinlab/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spinlab {

// Bipartite multigraph built from random matchings.
//
// Left side: U+ = 0..n-1, W+ = n..n+r-1. Right side: U- and W- likewise.
// Global vertex ids put the left side first: left i -> i, right j -> side()+j.
// With r = 0 there are delta perfect matchings on n + n vertices. With r > 0
// there are delta-1 perfect matchings on (n+r) + (n+r) vertices plus one
// n-matching between U+ and U-, stored last.
struct BipartiteRegularGraph {
    int n = 0;
    int r = 0;
    int delta = 0;
    std::vector<std::vector<int>> matchings;  // matchings[m][left] = right

    int side() const { return n + r; }
    int vertex_count() const { return 2 * side(); }
    // (left, right) pairs, one per edge, multi-edges repeated.
    std::vector<std::pair<int, int>> edges() const;
    // Degree of every global vertex.
    std::vector<int> degrees() const;
};

// Throws ArgumentError unless every matching is a bijection on its domain.
void validate(const BipartiteRegularGraph& g);

BipartiteRegularGraph sample_graph(int n, int r, int delta, std::uint64_t seed);

// Text format: header "n r delta", then one line per matching.
void write_graph(std::ostream& os, const BipartiteRegularGraph& g);
BipartiteRegularGraph read_graph(std::istream& is);

// Structural gadget checks: simplicity and how the W terminals attach.
struct StructuralReport {
    bool simple = false;
    bool no_w_cross_edge = false;      // no W+ -- W- edge
    bool no_double_w_neighbor = false; // no vertex with two neighbours in W
    bool ok() const { return simple && no_w_cross_edge && no_double_w_neighbor; }
};

StructuralReport structural_check(const BipartiteRegularGraph& g);

// Samples G^r_n until the structural checks pass. Draw i uses stream i of
// `seed`; throws BudgetError after max_tries.
BipartiteRegularGraph sample_screened_gadget(int n, int r, int delta, std::uint64_t seed,
                                             int max_tries = 10000);

// General undirected multigraph (vertex count + edge list, loops allowed).
struct SimpleGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

SimpleGraph to_simple_graph(const BipartiteRegularGraph& g);
std::vector<int> degree_sequence(const SimpleGraph& g);
bool is_simple(const SimpleGraph& g);
bool is_regular(const SimpleGraph& g, int delta);
bool is_triangle_free(const SimpleGraph& g);

}  // namespace spinlab

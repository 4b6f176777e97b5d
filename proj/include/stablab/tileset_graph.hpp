#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stablab {

/// Directed graph whose vertices are the letters of a nearest-neighbor
/// Z-shift and whose edges are the allowed two-letter words. Bi-infinite
/// directed walks on the graph are exactly the configurations of the shift.
class TilesetGraph {
public:
    TilesetGraph() = default;
    explicit TilesetGraph(std::vector<std::string> alphabet);

    static TilesetGraph parse(const std::string& text);

    std::size_t vertex_count() const { return alphabet_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return alphabet_.empty(); }

    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    int letter_index(const std::string& letter) const;
    const std::string& letter(int v) const { return alphabet_.at(v); }

    void add_edge(const std::string& from, const std::string& to);
    void add_edge(int from, int to);
    bool has_edge(int from, int to) const { return edges_.count({from, to}) != 0; }

    std::vector<std::vector<int>> out_adjacency() const;
    std::vector<std::vector<int>> in_adjacency() const;

    /// Strongly connected components, in a deterministic order (by least
    /// contained vertex). Each component's vertices are sorted.
    std::vector<std::vector<int>> strongly_connected_components() const;

    /// Keeps only vertices that lie on a bi-infinite walk, i.e. the maximal
    /// subgraph where every vertex has in- and out-degree at least one.
    /// Idempotent; the represented shift is unchanged.
    TilesetGraph prune_essential() const;

    bool is_essential() const;

    /// Restriction to a vertex subset (labels kept).
    TilesetGraph induced_subgraph(const std::vector<int>& vertices) const;

    std::string to_text() const;
    std::string to_dot() const;

private:
    std::vector<std::string> alphabet_;
    std::map<std::string, int> index_;
    std::set<std::pair<int, int>> edges_;
};

/// Disjoint union; colliding labels get deterministic ".1"/".2" suffixes.
/// M(union) = M(g1) u M(g2).
TilesetGraph graph_union(const TilesetGraph& g1, const TilesetGraph& g2);

/// Tensor product: vertices are label pairs "a|b", an edge exists iff both
/// coordinates have it. Stabilizers intersect, so M(product) is the
/// lcm-combination of the factors' multiples.
TilesetGraph graph_product(const TilesetGraph& g1, const TilesetGraph& g2);

struct EmptySftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stablab

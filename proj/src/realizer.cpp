#include "stablab/realizer.hpp"

#include <stdexcept>

namespace stablab {

TilesetGraph gamma_cycle(std::uint64_t p) {
    if (p == 0) throw std::invalid_argument("cycle length must be positive");
    std::vector<std::string> letters;
    for (std::uint64_t i = 0; i < p; ++i) letters.push_back("c" + std::to_string(i));
    TilesetGraph g(std::move(letters));
    for (std::uint64_t i = 0; i < p; ++i)
        g.add_edge(static_cast<int>(i), static_cast<int>((i + 1) % p));
    return g;
}

TilesetGraph gamma_progression(std::uint64_t a, std::uint64_t k) {
    if (a == 0 || k == 0) throw std::invalid_argument("a and k must be positive");

    // Base graph: k-cycle c0..c{k-1} plus a detour vertex t{i} per cycle
    // edge, giving cycles of every length from k up.
    std::vector<std::string> letters;
    for (std::uint64_t i = 0; i < k; ++i) letters.push_back("c" + std::to_string(i));
    for (std::uint64_t i = 0; i < k; ++i) letters.push_back("t" + std::to_string(i));
    std::vector<std::pair<int, int>> base_edges;
    for (std::uint64_t i = 0; i < k; ++i) {
        int ci = static_cast<int>(i);
        int cnext = static_cast<int>((i + 1) % k);
        int ti = static_cast<int>(k + i);
        base_edges.emplace_back(ci, cnext);
        base_edges.emplace_back(ci, ti);
        base_edges.emplace_back(ti, cnext);
    }

    if (a == 1) {
        TilesetGraph g(std::move(letters));
        for (auto [u, v] : base_edges) g.add_edge(u, v);
        return g;
    }

    // Subdivide every base edge into a path of length a, scaling each cycle
    // length by a.
    int next = static_cast<int>(letters.size());
    std::vector<std::pair<int, int>> edges;
    for (std::size_t e = 0; e < base_edges.size(); ++e) {
        auto [u, v] = base_edges[e];
        int prev = u;
        for (std::uint64_t j = 1; j < a; ++j) {
            letters.push_back("s" + std::to_string(e) + "." + std::to_string(j));
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, v);
    }
    TilesetGraph g(std::move(letters));
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

TilesetGraph realize(const SemilinearSet& target) {
    if (target.empty()) throw NotRealizableError("empty target set");
    RealizablePieces pieces = realizable_pieces(target);

    std::vector<TilesetGraph> parts;
    for (std::uint64_t p : pieces.finite_cycles) parts.push_back(gamma_cycle(p));
    for (auto [a, k] : pieces.progressions) parts.push_back(gamma_progression(a, k));

    if (parts.size() == 1) return parts.front();

    // Assemble the disjoint union directly so piece labels stay readable
    // ("<piece index>.<label>") instead of accumulating collision suffixes.
    std::vector<std::string> letters;
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (const auto& l : parts[i].alphabet())
            letters.push_back(std::to_string(i) + "." + l);
    TilesetGraph g(std::move(letters));
    int offset = 0;
    for (const auto& part : parts) {
        for (auto [u, v] : part.edges()) g.add_edge(u + offset, v + offset);
        offset += static_cast<int>(part.vertex_count());
    }
    return g;
}

}  // namespace stablab

#include "stablab/tileset_graph.hpp"

#include <algorithm>
#include <sstream>

namespace stablab {

TilesetGraph::TilesetGraph(std::vector<std::string> alphabet)
    : alphabet_(std::move(alphabet)) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (!index_.emplace(alphabet_[i], static_cast<int>(i)).second)
            throw ParseError("duplicate letter: " + alphabet_[i]);
    }
}

int TilesetGraph::letter_index(const std::string& letter) const {
    auto it = index_.find(letter);
    if (it == index_.end()) throw ParseError("unknown letter: " + letter);
    return it->second;
}

void TilesetGraph::add_edge(const std::string& from, const std::string& to) {
    edges_.emplace(letter_index(from), letter_index(to));
}

void TilesetGraph::add_edge(int from, int to) {
    if (from < 0 || to < 0 || from >= static_cast<int>(alphabet_.size()) ||
        to >= static_cast<int>(alphabet_.size()))
        throw std::out_of_range("edge endpoint outside alphabet");
    edges_.emplace(from, to);
}

std::vector<std::vector<int>> TilesetGraph::out_adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count());
    for (auto [a, b] : edges_) adj[a].push_back(b);
    return adj;
}

std::vector<std::vector<int>> TilesetGraph::in_adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count());
    for (auto [a, b] : edges_) adj[b].push_back(a);
    return adj;
}

std::vector<std::vector<int>> TilesetGraph::strongly_connected_components() const {
    const int n = static_cast<int>(vertex_count());
    auto adj = out_adjacency();
    std::vector<int> dfn(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int timer = 0, ncomp = 0;
    std::vector<std::vector<int>> comps;

    // Iterative Tarjan; frame = (vertex, next edge index).
    for (int root = 0; root < n; ++root) {
        if (dfn[root] != -1) continue;
        std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
        while (!frames.empty()) {
            auto& [v, ei] = frames.back();
            if (ei == 0) {
                dfn[v] = low[v] = timer++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (ei < adj[v].size()) {
                int w = adj[v][ei++];
                if (dfn[w] == -1) {
                    frames.emplace_back(w, 0);
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], dfn[w]);
            }
            if (descended) continue;
            if (low[v] == dfn[v]) {
                std::vector<int> c;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    c.push_back(w);
                } while (w != v);
                std::sort(c.begin(), c.end());
                comps.push_back(std::move(c));
                ++ncomp;
            }
            int child = v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().first] = std::min(low[frames.back().first], low[child]);
        }
    }
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return comps;
}

TilesetGraph TilesetGraph::prune_essential() const {
    const int n = static_cast<int>(vertex_count());
    std::vector<int> indeg(n, 0), outdeg(n, 0);
    for (auto [a, b] : edges_) {
        ++outdeg[a];
        ++indeg[b];
    }
    std::vector<bool> removed(n, false);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0 || outdeg[v] == 0) {
            removed[v] = true;
            queue.push_back(v);
        }
    auto out = out_adjacency();
    auto in = in_adjacency();
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w : out[v])
            if (!removed[w] && --indeg[w] == 0) {
                removed[w] = true;
                queue.push_back(w);
            }
        for (int w : in[v])
            if (!removed[w] && --outdeg[w] == 0) {
                removed[w] = true;
                queue.push_back(w);
            }
    }
    std::vector<int> keep;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) keep.push_back(v);
    return induced_subgraph(keep);
}

bool TilesetGraph::is_essential() const {
    std::vector<int> indeg(vertex_count(), 0), outdeg(vertex_count(), 0);
    for (auto [a, b] : edges_) {
        ++outdeg[a];
        ++indeg[b];
    }
    for (std::size_t v = 0; v < vertex_count(); ++v)
        if (indeg[v] == 0 || outdeg[v] == 0) return false;
    return true;
}

TilesetGraph TilesetGraph::induced_subgraph(const std::vector<int>& vertices) const {
    std::vector<std::string> letters;
    std::vector<int> remap(vertex_count(), -1);
    for (int v : vertices) {
        remap[v] = static_cast<int>(letters.size());
        letters.push_back(alphabet_[v]);
    }
    TilesetGraph g(std::move(letters));
    for (auto [a, b] : edges_)
        if (remap[a] != -1 && remap[b] != -1) g.add_edge(remap[a], remap[b]);
    return g;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

TilesetGraph TilesetGraph::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<TilesetGraph> g;
    std::vector<std::pair<std::string, std::string>> pending;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "alphabet:") {
            if (g) throw ParseError("line " + std::to_string(lineno) + ": duplicate alphabet");
            g.emplace(std::vector<std::string>(toks.begin() + 1, toks.end()));
        } else if (toks[0] == "edge:") {
            if (toks.size() != 3)
                throw ParseError("line " + std::to_string(lineno) + ": edge wants two letters");
            pending.emplace_back(toks[1], toks[2]);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive " + toks[0]);
        }
    }
    if (!g) throw ParseError("missing alphabet line");
    for (auto& [a, b] : pending) {
        try {
            g->add_edge(a, b);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " in edge declaration");
        }
    }
    return *g;
}

std::string TilesetGraph::to_text() const {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& a : alphabet_) out << ' ' << a;
    out << '\n';
    for (auto [a, b] : edges_) out << "edge: " << alphabet_[a] << ' ' << alphabet_[b] << '\n';
    return out.str();
}

std::string TilesetGraph::to_dot() const {
    std::ostringstream out;
    out << "digraph tileset {\n";
    for (const auto& a : alphabet_) out << "  \"" << a << "\";\n";
    for (auto [a, b] : edges_)
        out << "  \"" << alphabet_[a] << "\" -> \"" << alphabet_[b] << "\";\n";
    out << "}\n";
    return out.str();
}

TilesetGraph graph_union(const TilesetGraph& g1, const TilesetGraph& g2) {
    std::set<std::string> seen(g1.alphabet().begin(), g1.alphabet().end());
    bool collision = false;
    for (const auto& a : g2.alphabet())
        if (seen.count(a)) collision = true;
    auto label = [&](const TilesetGraph& g, int side) {
        std::vector<std::string> out;
        for (const auto& a : g.alphabet())
            out.push_back(collision ? a + "." + std::to_string(side) : a);
        return out;
    };
    auto l1 = label(g1, 1), l2 = label(g2, 2);
    std::vector<std::string> letters = l1;
    letters.insert(letters.end(), l2.begin(), l2.end());
    TilesetGraph g(std::move(letters));
    for (auto [a, b] : g1.edges()) g.add_edge(a, b);
    const int off = static_cast<int>(g1.vertex_count());
    for (auto [a, b] : g2.edges()) g.add_edge(a + off, b + off);
    return g;
}

TilesetGraph graph_product(const TilesetGraph& g1, const TilesetGraph& g2) {
    if (g1.empty() || g2.empty()) throw EmptySftError("product with an empty factor");
    std::vector<std::string> letters;
    letters.reserve(g1.vertex_count() * g2.vertex_count());
    for (const auto& a : g1.alphabet())
        for (const auto& b : g2.alphabet()) letters.push_back(a + "|" + b);
    TilesetGraph g(std::move(letters));
    const int n2 = static_cast<int>(g2.vertex_count());
    for (auto [a, b] : g1.edges())
        for (auto [c, d] : g2.edges()) g.add_edge(a * n2 + c, b * n2 + d);
    return g;
}

}  // namespace stablab

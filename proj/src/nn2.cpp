#include "stablab/nn2.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stablab {

namespace {

// Candidate-vertex cap for the block construction; beyond this the quadratic
// edge enumeration stops being reasonable.
constexpr std::uint64_t kMaxBlockVertices = 4096;

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

Nn2Sft::Nn2Sft(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (!index_.emplace(alphabet_[i], static_cast<int>(i)).second)
            throw ParseError("duplicate letter: " + alphabet_[i]);
}

int Nn2Sft::letter_index(const std::string& letter) const {
    auto it = index_.find(letter);
    if (it == index_.end()) throw ParseError("unknown letter: " + letter);
    return it->second;
}

void Nn2Sft::forbid_horizontal(const std::string& a, const std::string& b) {
    h_forbidden_.emplace(letter_index(a), letter_index(b));
}

void Nn2Sft::forbid_vertical(const std::string& a, const std::string& b) {
    v_forbidden_.emplace(letter_index(a), letter_index(b));
}

Nn2Sft Nn2Sft::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::optional<Nn2Sft> sft;
    std::vector<std::tuple<char, std::string, std::string>> pending;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "alphabet:") {
            if (sft) throw ParseError("line " + std::to_string(lineno) + ": duplicate alphabet");
            sft.emplace(std::vector<std::string>(toks.begin() + 1, toks.end()));
        } else if (toks[0] == "hforbid:" || toks[0] == "vforbid:") {
            if (toks.size() != 3)
                throw ParseError("line " + std::to_string(lineno) + ": " + toks[0] +
                                 " wants two letters");
            pending.emplace_back(toks[0][0], toks[1], toks[2]);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive " + toks[0]);
        }
    }
    if (!sft) throw ParseError("missing alphabet line");
    for (auto& [dir, a, b] : pending) {
        if (dir == 'h')
            sft->forbid_horizontal(a, b);
        else
            sft->forbid_vertical(a, b);
    }
    return *sft;
}

std::string Nn2Sft::to_text() const {
    std::ostringstream out;
    out << "alphabet:";
    for (const auto& a : alphabet_) out << ' ' << a;
    out << '\n';
    for (auto [a, b] : h_forbidden_)
        out << "hforbid: " << alphabet_[a] << ' ' << alphabet_[b] << '\n';
    for (auto [a, b] : v_forbidden_)
        out << "vforbid: " << alphabet_[a] << ' ' << alphabet_[b] << '\n';
    return out.str();
}

std::string TorusConfig::to_json(const Nn2Sft& sft) const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["q"] = q;
    auto rows = nlohmann::ordered_json::array();
    for (std::int64_t y = 0; y < q; ++y) {
        auto row = nlohmann::ordered_json::array();
        for (std::int64_t x = 0; x < p; ++x) row.push_back(sft.alphabet()[at(x, y)]);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump();
}

std::vector<TorusViolation> check_torus(const Nn2Sft& sft, const TorusConfig& cfg) {
    if (cfg.p < 1 || cfg.q < 1 ||
        cfg.cells.size() != static_cast<std::size_t>(cfg.p * cfg.q))
        throw std::invalid_argument("torus dimensions do not match the cell array");
    for (int c : cfg.cells)
        if (c < 0 || c >= static_cast<int>(sft.alphabet_size()))
            throw std::invalid_argument("torus cell outside the alphabet");
    std::vector<TorusViolation> out;
    for (std::int64_t j = 0; j < cfg.q; ++j)
        for (std::int64_t i = 0; i < cfg.p; ++i) {
            int a = cfg.at(i, j);
            int hb = cfg.at(i + 1, j);
            if (!sft.h_allowed(a, hb)) out.push_back({i, j, 'h', a, hb});
            int vb = cfg.at(i, j + 1);
            if (!sft.v_allowed(a, vb)) out.push_back({i, j, 'v', a, vb});
        }
    return out;
}

std::optional<TorusConfig> search_torus(const Nn2Sft& sft, std::int64_t p, std::int64_t q) {
    if (p < 1 || q < 1) throw std::invalid_argument("torus dimensions must be positive");
    const int letters = static_cast<int>(sft.alphabet_size());
    TorusConfig cfg{p, q, std::vector<int>(static_cast<std::size_t>(p * q), -1)};
    const std::int64_t total = p * q;

    auto fits = [&](std::int64_t t, int letter) {
        std::int64_t i = t % p, j = t / p;
        if (i > 0 && !sft.h_allowed(cfg.cell(i - 1, j), letter)) return false;
        // With p = 1 (resp. q = 1) the wrap partner is the cell itself.
        if (i == p - 1 && !sft.h_allowed(letter, p == 1 ? letter : cfg.cell(0, j)))
            return false;
        if (j > 0 && !sft.v_allowed(cfg.cell(i, j - 1), letter)) return false;
        if (j == q - 1 && !sft.v_allowed(letter, q == 1 ? letter : cfg.cell(i, 0)))
            return false;
        return true;
    };

    std::int64_t t = 0;
    while (true) {
        std::int64_t i = t % p, j = t / p;
        int start = cfg.cell(i, j) + 1;
        cfg.cell(i, j) = -1;
        int chosen = -1;
        for (int l = start; l < letters; ++l)
            if (fits(t, l)) {
                chosen = l;
                break;
            }
        if (chosen == -1) {
            if (t == 0) return std::nullopt;
            --t;
        } else {
            cfg.cell(i, j) = chosen;
            if (++t == total) return cfg;
        }
    }
}

namespace {

using Block = std::vector<int>;  // entry (i,j) at index j*width + i

struct BlockGraphData {
    TilesetGraph graph;          // essential part
    std::vector<Block> blocks;   // one per graph vertex
    std::int64_t width = 0;      // p' (or p for the q = 0 row case)
    std::int64_t height = 0;     // q (0 marks the row case)
};

std::string block_label(const Nn2Sft& sft, const Block& b, std::int64_t width,
                        std::int64_t height) {
    std::ostringstream out;
    for (std::int64_t j = 0; j < std::max<std::int64_t>(height, 1); ++j) {
        if (j) out << '/';
        for (std::int64_t i = 0; i < width; ++i) {
            if (i) out << ',';
            out << sft.alphabet()[b[static_cast<std::size_t>(j * width + i)]];
        }
    }
    return out.str();
}

BlockGraphData build_period_vector_graph(const Nn2Sft& sft, PeriodVector v) {
    v = v.canonical();
    if (v.p == 0 && v.q == 0) throw std::invalid_argument("period vector must be non-zero");
    const std::int64_t width = v.q == 0 ? v.p : std::max<std::int64_t>(std::llabs(v.p), 1);
    const std::int64_t height = v.q;
    const std::int64_t cells = width * std::max<std::int64_t>(height, 1);
    const std::int64_t letters = static_cast<std::int64_t>(sft.alphabet_size());

    std::uint64_t total = 1;
    for (std::int64_t c = 0; c < cells; ++c) {
        total *= static_cast<std::uint64_t>(letters);
        if (total > kMaxBlockVertices)
            throw std::runtime_error("period-vector graph too large: more than " +
                                     std::to_string(kMaxBlockVertices) +
                                     " candidate blocks");
    }
    if (letters == 0)
        return {TilesetGraph(std::vector<std::string>{}), {}, width, height};

    std::vector<Block> candidates(total, Block(static_cast<std::size_t>(cells)));
    for (std::uint64_t n = 0; n < total; ++n) {
        std::uint64_t rest = n;
        for (std::int64_t c = cells - 1; c >= 0; --c) {
            candidates[n][static_cast<std::size_t>(c)] = static_cast<int>(rest % letters);
            rest /= letters;
        }
    }

    auto at = [&](const Block& b, std::int64_t i, std::int64_t j) {
        return b[static_cast<std::size_t>(j * width + i)];
    };

    auto valid = [&](const Block& b) {
        if (height == 0) {
            // Cyclically h-valid width-p row.
            for (std::int64_t i = 0; i < width; ++i)
                if (!sft.h_allowed(at(b, i, 0), at(b, (i + 1) % width, 0))) return false;
            return true;
        }
        for (std::int64_t j = 0; j < height; ++j)
            for (std::int64_t i = 0; i + 1 < width; ++i)
                if (!sft.h_allowed(at(b, i, j), at(b, i + 1, j))) return false;
        for (std::int64_t j = 0; j + 1 < height; ++j)
            for (std::int64_t i = 0; i < width; ++i)
                if (!sft.v_allowed(at(b, i, j), at(b, i, j + 1))) return false;
        if (v.p == 0) {
            // The wrap x(i,q) = x(i,0) closes inside a single block.
            for (std::int64_t i = 0; i < width; ++i)
                if (!sft.v_allowed(at(b, i, height - 1), at(b, i, 0))) return false;
        }
        return true;
    };

    std::vector<char> keep(total, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t n = 0; n < static_cast<std::int64_t>(total); ++n)
        keep[n] = valid(candidates[static_cast<std::size_t>(n)]);

    std::vector<Block> blocks;
    for (std::uint64_t n = 0; n < total; ++n)
        if (keep[n]) blocks.push_back(std::move(candidates[n]));

    // Edge u -> v places block v immediately to the right of block u.
    auto compatible = [&](const Block& bu, const Block& bv) {
        if (height == 0) {
            for (std::int64_t i = 0; i < width; ++i)
                if (!sft.v_allowed(at(bu, i, 0), at(bv, i, 0))) return false;
            return true;
        }
        for (std::int64_t j = 0; j < height; ++j)
            if (!sft.h_allowed(at(bu, width - 1, j), at(bv, 0, j))) return false;
        // Twisted wrap x(i, q) = x(i - p, 0): with p > 0 column i of the
        // right block sits above column i of the left one; with p < 0 the
        // roles swap.
        if (v.p > 0) {
            for (std::int64_t i = 0; i < width; ++i)
                if (!sft.v_allowed(at(bv, i, height - 1), at(bu, i, 0))) return false;
        } else if (v.p < 0) {
            for (std::int64_t i = 0; i < width; ++i)
                if (!sft.v_allowed(at(bu, i, height - 1), at(bv, i, 0))) return false;
        }
        return true;
    };

    std::vector<std::string> labels;
    labels.reserve(blocks.size());
    for (const auto& b : blocks) labels.push_back(block_label(sft, b, width, height));
    TilesetGraph g(labels);
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (compatible(blocks[a], blocks[b]))
                g.add_edge(static_cast<int>(a), static_cast<int>(b));

    TilesetGraph pruned = g.prune_essential();
    std::map<std::string, const Block*> by_label;
    for (std::size_t a = 0; a < blocks.size(); ++a) by_label[labels[a]] = &blocks[a];
    std::vector<Block> kept;
    for (const auto& l : pruned.alphabet()) kept.push_back(*by_label.at(l));
    return {std::move(pruned), std::move(kept), width, height};
}

}  // namespace

TilesetGraph period_vector_graph(const Nn2Sft& sft, PeriodVector v) {
    return build_period_vector_graph(sft, v).graph;
}

std::optional<TorusConfig> periodize(const Nn2Sft& sft, PeriodVector vin) {
    PeriodVector v = vin.canonical();
    BlockGraphData data = build_period_vector_graph(sft, v);
    if (data.graph.empty()) return std::nullopt;

    // Deterministic simple cycle: from vertex 0 always follow the smallest
    // out-neighbor until a vertex repeats.
    auto adj = data.graph.out_adjacency();
    std::vector<int> path;
    std::map<int, std::size_t> seen;
    int cur = 0;
    while (!seen.count(cur)) {
        seen[cur] = path.size();
        path.push_back(cur);
        cur = *std::min_element(adj[cur].begin(), adj[cur].end());
    }
    std::vector<int> cycle(path.begin() + static_cast<std::ptrdiff_t>(seen[cur]), path.end());
    const std::int64_t m = static_cast<std::int64_t>(cycle.size());
    const std::int64_t width = data.width;

    if (data.height == 0) {
        // Rows stacked vertically: torus p x m.
        TorusConfig cfg{width, m, std::vector<int>(static_cast<std::size_t>(width * m))};
        for (std::int64_t j = 0; j < m; ++j)
            for (std::int64_t i = 0; i < width; ++i)
                cfg.cell(i, j) = data.blocks[cycle[static_cast<std::size_t>(j)]]
                                            [static_cast<std::size_t>(i)];
        return cfg;
    }

    // Blocks side by side give horizontal period P = m * width; unroll the
    // twist x(i, j+q) = x(i-p, j) until the vertical direction closes too.
    const std::int64_t P = m * width;
    const std::int64_t ap = std::llabs(v.p);
    const std::int64_t turns = ap == 0 ? 1 : P / std::gcd(ap, P);
    const std::int64_t Q = turns * data.height;
    TorusConfig cfg{P, Q, std::vector<int>(static_cast<std::size_t>(P * Q))};
    for (std::int64_t j = 0; j < Q; ++j) {
        const std::int64_t k = j / data.height, r = j % data.height;
        for (std::int64_t i = 0; i < P; ++i) {
            std::int64_t i0 = (i - v.p * k) % P;
            if (i0 < 0) i0 += P;
            const std::int64_t t = i0 / width, off = i0 % width;
            cfg.cell(i, j) = data.blocks[cycle[static_cast<std::size_t>(t)]]
                                        [static_cast<std::size_t>(r * width + off)];
        }
    }
    return cfg;
}

namespace {

struct ExtGcd {
    std::int64_t g, s, t;  // s*a + t*b = g
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return {a < 0 ? -a : a, a < 0 ? -1 : 1, 0};
    ExtGcd r = ext_gcd(b, a % b);
    return {r.g, r.t, r.s - (a / b) * r.t};
}

StabilizerLattice hnf_from_generators(const std::vector<std::pair<std::int64_t, std::int64_t>>& gens) {
    std::int64_t a = 0, c = 0, d = 0;
    for (auto [u, w] : gens) {
        if (w == 0) {
            a = std::gcd(a, u);
            continue;
        }
        if (d == 0) {
            c = u;
            d = w;
            continue;
        }
        ExtGcd e = ext_gcd(d, w);
        a = std::gcd(a, (w / e.g) * c - (d / e.g) * u);
        c = e.s * c + e.t * u;
        d = e.g;
    }
    if (d < 0) {
        c = -c;
        d = -d;
    }
    if (a < 0) a = -a;
    if (a == 0 || d == 0) throw std::invalid_argument("generators do not span a finite-index lattice");
    c = ((c % a) + a) % a;
    return {a, c, d};
}

}  // namespace

StabilizerLattice stabilizer_lattice(const TorusConfig& cfg) {
    std::vector<std::pair<std::int64_t, std::int64_t>> gens{{cfg.p, 0}, {0, cfg.q}};
    for (std::int64_t b = 0; b < cfg.q; ++b)
        for (std::int64_t a = 0; a < cfg.p; ++a) {
            if (a == 0 && b == 0) continue;
            bool fixes = true;
            for (std::int64_t j = 0; j < cfg.q && fixes; ++j)
                for (std::int64_t i = 0; i < cfg.p && fixes; ++i)
                    if (cfg.at(i + a, j + b) != cfg.at(i, j)) fixes = false;
            if (fixes) gens.emplace_back(a, b);
        }
    return hnf_from_generators(gens);
}

StabilizerLattice lattice_intersection(const StabilizerLattice& x, const StabilizerLattice& y) {
    const std::int64_t a = std::lcm(x.a, y.a);
    const std::int64_t d0 = std::lcm(x.d, y.d);
    // Smallest multiple k*d0 admitting a common x-offset, found by scanning;
    // k is bounded by lcm(x.a, y.a) / gcd so the loop terminates.
    for (std::int64_t k = 1;; ++k) {
        const std::int64_t v = k * d0;
        const std::int64_t r1 = (v / x.d) * x.c, r2 = (v / y.d) * y.c;
        const std::int64_t g = std::gcd(x.a, y.a);
        if ((r1 - r2) % g != 0) continue;
        // CRT: u = r1 (mod x.a), u = r2 (mod y.a).
        ExtGcd e = ext_gcd(x.a, y.a);
        std::int64_t diff = (r2 - r1) / g;
        std::int64_t u = r1 + x.a * ((e.s * diff) % (y.a / g));
        u = ((u % a) + a) % a;
        return {a, u, v};
    }
}

ProbeReport aperiodicity_probe(const Nn2Sft& sft, std::uint64_t bound) {
    if (bound < 1) throw std::invalid_argument("bound must be positive");
    ProbeReport rep;
    rep.bound = bound;

    // Emptiness certificate: no locally valid (bound+1) x (bound+1) square
    // (without wraparound) means the SFT itself is empty. Side bound+1 so
    // that even at bound 1 the square contains adjacent pairs.
    {
        const std::int64_t n = static_cast<std::int64_t>(bound) + 1;
        const int letters = static_cast<int>(sft.alphabet_size());
        std::vector<int> sq(static_cast<std::size_t>(n * n), -1);
        std::int64_t t = 0;
        bool found = false;
        while (t >= 0) {
            std::int64_t i = t % n, j = t / n;
            int start = sq[static_cast<std::size_t>(j * n + i)] + 1;
            sq[static_cast<std::size_t>(j * n + i)] = -1;
            int chosen = -1;
            for (int l = start; l < letters; ++l) {
                if (i > 0 && !sft.h_allowed(sq[static_cast<std::size_t>(j * n + i - 1)], l))
                    continue;
                if (j > 0 && !sft.v_allowed(sq[static_cast<std::size_t>((j - 1) * n + i)], l))
                    continue;
                chosen = l;
                break;
            }
            if (chosen == -1) {
                --t;
                continue;
            }
            sq[static_cast<std::size_t>(j * n + i)] = chosen;
            if (++t == n * n) {
                found = true;
                break;
            }
        }
        if (!found) {
            rep.kind = ProbeReport::Kind::EmptyWithinBound;
            return rep;
        }
    }

    for (std::int64_t p = 1; p <= static_cast<std::int64_t>(bound); ++p)
        for (std::int64_t q = 1; q <= static_cast<std::int64_t>(bound); ++q)
            if (auto cfg = search_torus(sft, p, q)) {
                rep.kind = ProbeReport::Kind::PeriodicPointFound;
                rep.witness = std::move(cfg);
                return rep;
            }

    std::vector<PeriodVector> vectors;
    for (std::int64_t p = 1; p <= static_cast<std::int64_t>(bound); ++p)
        vectors.push_back({p, 0});
    for (std::int64_t q = 1; q <= static_cast<std::int64_t>(bound); ++q)
        for (std::int64_t p = -static_cast<std::int64_t>(bound);
             p <= static_cast<std::int64_t>(bound); ++p)
            if (std::gcd(std::llabs(p), q) == 1) vectors.push_back({p, q});
    for (PeriodVector v : vectors)
        if (auto cfg = periodize(sft, v)) {
            rep.kind = ProbeReport::Kind::VectorStabilizedFound;
            rep.vector = v;
            rep.witness = std::move(cfg);
            return rep;
        }

    rep.kind = ProbeReport::Kind::Unknown;
    return rep;
}

}  // namespace stablab

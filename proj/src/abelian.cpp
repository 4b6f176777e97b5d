#include "stablab/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stablab/period_counts.hpp"

namespace stablab {

std::vector<std::int64_t> FgAbelianGroup::reduce(std::vector<std::int64_t> v) const {
    if (static_cast<int>(v.size()) != dim())
        throw std::invalid_argument("element dimension does not match the group");
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        std::int64_t m = torsion[i];
        std::int64_t& c = v[rank + i];
        c %= m;
        if (c < 0) c += m;
    }
    return v;
}

std::vector<std::int64_t> FgAbelianGroup::negate(const std::vector<std::int64_t>& v) const {
    std::vector<std::int64_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return reduce(std::move(out));
}

std::vector<std::int64_t> FgAbelianGroup::add(const std::vector<std::int64_t>& a,
                                              const std::vector<std::int64_t>& b) const {
    std::vector<std::int64_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return reduce(std::move(out));
}

bool FgAbelianGroup::is_zero(const std::vector<std::int64_t>& v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c == 0; });
}

std::vector<std::vector<std::int64_t>> FgAbelianGroup::canonical_generators() const {
    std::vector<std::vector<std::int64_t>> out;
    for (int i = 0; i < dim(); ++i) {
        auto e = zero();
        e[i] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

std::string FgAbelianGroup::to_string() const {
    std::vector<std::string> parts;
    if (rank == 1)
        parts.push_back("Z");
    else if (rank > 1)
        parts.push_back("Z^" + std::to_string(rank));
    for (std::int64_t m : torsion) parts.push_back("Z/" + std::to_string(m));
    if (parts.empty()) return "Z^0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
    return out;
}

namespace {

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

std::vector<std::int64_t> parse_tuple(const std::string& s, std::size_t& pos) {
    std::vector<std::int64_t> out;
    auto parse_int = [&]() {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected integer in group element at '" + s.substr(start) + "'");
        return std::stoll(s.substr(start, pos - start));
    };
    if (pos < s.size() && s[pos] == '(') {
        ++pos;
        while (true) {
            out.push_back(parse_int());
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < s.size() && s[pos] == ')') {
                ++pos;
                break;
            }
            throw ParseError("malformed tuple in group syntax");
        }
    } else {
        out.push_back(parse_int());
    }
    return out;
}

}  // namespace

GroupExpr parse_group(const std::string& text) {
    std::string s = strip_spaces(text);
    GroupExpr out;
    std::string base = s;
    std::string gens;
    auto cut = s.find("/<");
    if (cut != std::string::npos) {
        base = s.substr(0, cut);
        if (s.back() != '>') throw ParseError("quotient generators must end with '>'");
        gens = s.substr(cut + 2, s.size() - cut - 3);
    }

    // Product of factors Z, Z^n, Z/m separated by 'x'.
    std::vector<std::string> factors;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= base.size(); ++i)
        if (i == base.size() || base[i] == 'x') {
            factors.push_back(base.substr(start, i - start));
            start = i + 1;
        }
    for (const auto& f : factors) {
        if (f == "Z") {
            ++out.group.rank;
        } else if (f.rfind("Z^", 0) == 0) {
            int k = std::stoi(f.substr(2));
            if (k < 0) throw ParseError("negative rank in group syntax");
            out.group.rank += k;
        } else if (f.rfind("Z/", 0) == 0) {
            std::int64_t m = std::stoll(f.substr(2));
            if (m < 2) throw ParseError("torsion factor must be at least 2");
            out.group.torsion.push_back(m);
        } else {
            throw ParseError("unknown group factor '" + f + "'");
        }
    }
    for (std::size_t i = 1; i < out.group.torsion.size(); ++i)
        if (out.group.torsion[i] % out.group.torsion[i - 1] != 0)
            throw ParseError("torsion factors must form a divisibility chain");

    if (!gens.empty()) {
        std::size_t pos = 0;
        while (pos < gens.size()) {
            auto v = parse_tuple(gens, pos);
            if (static_cast<int>(v.size()) != out.group.dim())
                throw ParseError("quotient generator dimension mismatch");
            out.quotient_gens.push_back(out.group.reduce(std::move(v)));
            if (pos < gens.size()) {
                if (gens[pos] != ',') throw ParseError("expected ',' between quotient generators");
                ++pos;
            }
        }
    }
    return out;
}

int AbelianNnSft::letter_index(const std::string& letter) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == letter) return static_cast<int>(i);
    throw ParseError("unknown letter: " + letter);
}

void AbelianNnSft::forbid(const std::string& a, const std::string& b,
                          std::vector<std::int64_t> offset) {
    offset = group.reduce(std::move(offset));
    if (group.is_zero(offset)) throw std::invalid_argument("pattern offset must be non-zero");
    forbidden.push_back({letter_index(a), letter_index(b), std::move(offset)});
}

void AbelianNnSft::normalize() {
    for (auto& p : forbidden) {
        p.offset = group.reduce(p.offset);
        Pattern flipped{p.b, p.a, group.negate(p.offset)};
        if (flipped < p) p = std::move(flipped);
    }
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
}

AbelianNnSft AbelianNnSft::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    AbelianNnSft out;
    bool have_group = false, have_alphabet = false;
    std::vector<std::tuple<std::string, std::string, std::string>> pending;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "group:") {
            std::string rest;
            std::getline(ls, rest);
            auto expr = parse_group(rest);
            if (!expr.quotient_gens.empty())
                throw ParseError("line " + std::to_string(lineno) +
                                 ": sft group must not carry a quotient");
            out.group = expr.group;
            have_group = true;
        } else if (head == "alphabet:") {
            std::string tok;
            while (ls >> tok) out.alphabet.push_back(tok);
            have_alphabet = true;
        } else if (head == "forbid:") {
            std::string a, b, off;
            if (!(ls >> a >> b >> off))
                throw ParseError("line " + std::to_string(lineno) +
                                 ": forbid wants two letters and an offset");
            pending.emplace_back(a, b, off);
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": unknown directive " + head);
        }
    }
    if (!have_group) throw ParseError("missing group line");
    if (!have_alphabet) throw ParseError("missing alphabet line");
    for (auto& [a, b, off] : pending) {
        std::size_t pos = 0;
        auto v = parse_tuple(off, pos);
        if (pos != off.size()) throw ParseError("trailing characters after offset " + off);
        if (static_cast<int>(v.size()) != out.group.dim())
            throw ParseError("offset dimension mismatch in 'forbid: " + a + " " + b + " " + off +
                             "'");
        out.forbid(a, b, std::move(v));
    }
    return out;
}

std::string AbelianNnSft::to_text() const {
    std::ostringstream out;
    out << "group: " << group.to_string() << '\n';
    out << "alphabet:";
    for (const auto& a : alphabet) out << ' ' << a;
    out << '\n';
    for (const auto& p : forbidden) {
        out << "forbid: " << alphabet[p.a] << ' ' << alphabet[p.b] << " (";
        for (std::size_t i = 0; i < p.offset.size(); ++i) {
            if (i) out << ',';
            out << p.offset[i];
        }
        out << ")\n";
    }
    return out.str();
}

namespace {

/// Generators lifted to Z^dim together with the ambient torsion relations.
IntMat lifted_rows(const FgAbelianGroup& g, const IntMat& gens) {
    IntMat rows = gens;
    for (std::size_t i = 0; i < g.torsion.size(); ++i) {
        std::vector<std::int64_t> rel(g.dim(), 0);
        rel[g.rank + i] = g.torsion[i];
        rows.push_back(std::move(rel));
    }
    return rows;
}

}  // namespace

SubgroupLattice make_subgroup(FgAbelianGroup ambient, IntMat gens) {
    for (auto& row : gens) row = ambient.reduce(std::move(row));
    SubgroupLattice lat{std::move(ambient), gens, {}};
    lat.hnf = hnf_rows(lifted_rows(lat.ambient, gens));
    return lat;
}

bool SubgroupLattice::contains(const std::vector<std::int64_t>& v) const {
    auto r = hnf_reduce(hnf, ambient.reduce(v));
    return std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t SubgroupLattice::index() const {
    return hnf_index(hnf, static_cast<std::size_t>(ambient.dim()));
}

std::vector<std::vector<std::int64_t>> coset_transversal(const SubgroupLattice& lat) {
    const std::size_t n = static_cast<std::size_t>(lat.ambient.dim());
    if (hnf_index(lat.hnf, n) == 0)
        throw std::invalid_argument("subgroup has infinite index; no finite transversal");
    std::vector<std::vector<std::int64_t>> reps;
    std::vector<std::int64_t> digits(n, 0);
    while (true) {
        reps.push_back(digits);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++digits[i] < lat.hnf[i][i]) break;
            digits[i] = 0;
            if (i == 0) return reps;
        }
        if (n == 0) return reps;
    }
}

QuotientMap quotient_map(const FgAbelianGroup& g, const IntMat& n_gens) {
    QuotientMap qm;
    qm.source = g;
    qm.n_gens = n_gens;
    for (auto& row : qm.n_gens) row = g.reduce(std::move(row));
    const std::size_t n = static_cast<std::size_t>(g.dim());

    IntMat rel_rows = lifted_rows(g, qm.n_gens);
    // Relation matrix with generators as columns.
    IntMat a(n, std::vector<std::int64_t>(rel_rows.size(), 0));
    for (std::size_t j = 0; j < rel_rows.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) a[i][j] = rel_rows[j][i];

    if (rel_rows.empty()) {
        qm.u = identity_mat(n);
        qm.uinv = identity_mat(n);
        for (std::size_t i = 0; i < n; ++i) qm.free_rows.push_back(i);
    } else {
        SmithResult s = smith_normal_form(a);
        qm.u = std::move(s.u);
        qm.uinv = std::move(s.uinv);
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t d = i < s.d[0].size() && i < s.d.size() ? s.d[i][i] : 0;
            if (d == 0)
                qm.free_rows.push_back(i);
            else if (d >= 2)
                qm.torsion_rows.emplace_back(i, d);
        }
    }
    qm.quotient.rank = static_cast<int>(qm.free_rows.size());
    for (auto [row, d] : qm.torsion_rows) qm.quotient.torsion.push_back(d);
    return qm;
}

std::vector<std::int64_t> QuotientMap::project(const std::vector<std::int64_t>& g) const {
    auto y = mat_apply(u, source.reduce(g));
    std::vector<std::int64_t> out;
    for (std::size_t r : free_rows) out.push_back(y[r]);
    for (auto [r, d] : torsion_rows) out.push_back(((y[r] % d) + d) % d);
    return out;
}

std::vector<std::int64_t> QuotientMap::section(const std::vector<std::int64_t>& q) const {
    auto qq = quotient.reduce(q);
    std::vector<std::int64_t> y(source.dim(), 0);
    for (std::size_t j = 0; j < free_rows.size(); ++j) y[free_rows[j]] = qq[j];
    for (std::size_t j = 0; j < torsion_rows.size(); ++j)
        y[torsion_rows[j].first] = qq[free_rows.size() + j];
    return source.reduce(mat_apply(uinv, y));
}

AbelianNnSft fix_subshift(FgAbelianGroup group, std::vector<std::string> alphabet,
                          const IntMat& n_gens) {
    AbelianNnSft out{std::move(group), std::move(alphabet), {}};
    const int letters = static_cast<int>(out.alphabet.size());
    for (const auto& gen : n_gens) {
        auto t = out.group.reduce(gen);
        if (out.group.is_zero(t)) continue;
        for (int a = 0; a < letters; ++a)
            for (int b = 0; b < letters; ++b)
                if (a != b) out.forbidden.push_back({a, b, t});
    }
    out.normalize();
    return out;
}

AbelianNnSft free_extension(const AbelianNnSft& x, int d) {
    if (!x.group.is_free())
        throw std::invalid_argument("free extension source must be a free group Z^k");
    const int k = x.group.rank;
    if (d < k) throw std::invalid_argument("free extension target rank below the source rank");
    AbelianNnSft out{{d, {}}, x.alphabet, {}};
    for (const auto& p : x.forbidden) {
        std::vector<std::int64_t> off(d, 0);
        std::copy(p.offset.begin(), p.offset.end(), off.begin());
        out.forbidden.push_back({p.a, p.b, std::move(off)});
    }
    out.normalize();
    return out;
}

AbelianNnSft pull_back(const AbelianNnSft& x, const QuotientMap& qm) {
    if (x.group != qm.quotient)
        throw std::invalid_argument("sft group does not match the quotient of the map");
    AbelianNnSft out = fix_subshift(qm.source, x.alphabet, qm.n_gens);
    for (const auto& p : x.forbidden)
        out.forbidden.push_back({p.a, p.b, qm.section(p.offset)});
    out.normalize();
    return out;
}

AbelianNnSft push_forward(const AbelianNnSft& x, const QuotientMap& qm) {
    if (x.group != qm.source)
        throw std::invalid_argument("sft group does not match the source of the map");

    AbelianNnSft canon = x;
    canon.normalize();
    std::set<Pattern> have(canon.forbidden.begin(), canon.forbidden.end());

    // Every inequality rule along each generator of N must be present.
    AbelianNnSft eq = fix_subshift(qm.source, x.alphabet, qm.n_gens);
    std::set<Pattern> equality(eq.forbidden.begin(), eq.forbidden.end());
    for (const auto& p : equality)
        if (!have.count(p))
            throw std::invalid_argument(
                "push-forward precondition failed: sft is not syntactically contained in "
                "Fix_A(N)");

    AbelianNnSft out{qm.quotient, x.alphabet, {}};
    for (const auto& p : canon.forbidden) {
        if (equality.count(p)) continue;
        auto try_map = [&](const Pattern& pat) -> bool {
            auto q = qm.project(pat.offset);
            if (qm.quotient.is_zero(q)) return false;
            if (qm.section(q) != pat.offset) return false;
            out.forbidden.push_back({pat.a, pat.b, std::move(q)});
            return true;
        };
        if (try_map(p)) continue;
        Pattern flipped{p.b, p.a, qm.source.negate(p.offset)};
        if (try_map(flipped)) continue;
        throw std::invalid_argument(
            "push-forward precondition failed: pattern offset is not a section image of a "
            "quotient generator direction");
    }
    out.normalize();
    return out;
}

AbelianNnSft higher_power(const AbelianNnSft& x, const SubgroupLattice& lat,
                          const std::vector<std::vector<std::int64_t>>& reps) {
    if (!x.group.is_free())
        throw std::invalid_argument("higher power is implemented over free groups Z^d");
    if (lat.ambient != x.group)
        throw std::invalid_argument("lattice ambient group does not match the sft group");
    const std::int64_t index = lat.index();
    if (index == 0) throw std::invalid_argument("higher power needs a finite-index lattice");
    if (static_cast<std::int64_t>(reps.size()) != index)
        throw std::invalid_argument("representative count does not equal the lattice index");

    std::map<std::vector<std::int64_t>, std::size_t> rep_slot;
    for (std::size_t j = 0; j < reps.size(); ++j)
        if (!rep_slot.emplace(hnf_reduce(lat.hnf, reps[j]), j).second)
            throw std::invalid_argument("representatives are not pairwise distinct modulo the "
                                        "lattice");

    const std::size_t m = reps.size();
    const std::size_t letters = x.alphabet.size();
    std::uint64_t blocks = 1;
    for (std::size_t j = 0; j < m; ++j) {
        blocks *= letters;
        if (blocks > 4096)
            throw std::runtime_error("higher-power alphabet too large (more than 4096 blocks)");
    }

    // Coordinates of a lattice element in the HNF basis (exact by
    // construction).
    const std::size_t n = static_cast<std::size_t>(x.group.rank);
    auto lattice_coords = [&](std::vector<std::int64_t> h) {
        std::vector<std::int64_t> c(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = h[i] / lat.hnf[i][i];
            for (std::size_t t = 0; t < n; ++t) h[t] -= c[i] * lat.hnf[i][t];
        }
        for (std::int64_t r : h)
            if (r != 0) throw std::logic_error("offset is not a lattice element");
        return c;
    };

    auto block_letter = [&](std::uint64_t idx, std::size_t slot) {
        for (std::size_t j = m; j-- > slot + 1;) idx /= letters;
        return static_cast<int>(idx % letters);
    };

    std::vector<char> bad(blocks, 0);
    std::vector<Pattern> raw;
    for (const auto& p : x.forbidden) {
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::int64_t> target(n);
            for (std::size_t t = 0; t < n; ++t) target[t] = reps[j][t] + p.offset[t];
            auto rf = hnf_reduce(lat.hnf, target);
            auto it = rep_slot.find(rf);
            if (it == rep_slot.end()) throw std::logic_error("residue missing from transversal");
            const std::size_t jf = it->second;
            std::vector<std::int64_t> hf(n);
            for (std::size_t t = 0; t < n; ++t) hf[t] = target[t] - reps[it->second][t];
            // hf is rep[j]+offset-rep[jf]; shift back to the lattice by the
            // residue difference being exact.
            auto c = lattice_coords(std::move(hf));
            const bool zero = std::all_of(c.begin(), c.end(),
                                          [](std::int64_t v) { return v == 0; });
            if (zero) {
                for (std::uint64_t u = 0; u < blocks; ++u)
                    if (block_letter(u, j) == p.a && block_letter(u, jf) == p.b) bad[u] = 1;
            } else {
                for (std::uint64_t u = 0; u < blocks; ++u) {
                    if (block_letter(u, j) != p.a) continue;
                    for (std::uint64_t w = 0; w < blocks; ++w)
                        if (block_letter(w, jf) == p.b)
                            raw.push_back({static_cast<int>(u), static_cast<int>(w), c});
                }
            }
        }
    }

    std::vector<int> remap(blocks, -1);
    AbelianNnSft out{{x.group.rank, {}}, {}, {}};
    for (std::uint64_t u = 0; u < blocks; ++u) {
        if (bad[u]) continue;
        remap[u] = static_cast<int>(out.alphabet.size());
        std::string label;
        for (std::size_t j = 0; j < m; ++j) {
            if (j) label += ',';
            label += x.alphabet[block_letter(u, j)];
        }
        out.alphabet.push_back(std::move(label));
    }
    for (auto& p : raw)
        if (remap[p.a] != -1 && remap[p.b] != -1)
            out.forbidden.push_back({remap[p.a], remap[p.b], p.offset});
    out.normalize();
    return out;
}

TilesetGraph to_tileset(const AbelianNnSft& x) {
    if (!(x.group.is_free() && x.group.rank == 1))
        throw std::invalid_argument("adapter expects an sft over Z");
    std::set<std::pair<int, int>> forbidden;
    for (const auto& p : x.forbidden) {
        if (p.offset[0] == 1)
            forbidden.emplace(p.a, p.b);
        else if (p.offset[0] == -1)
            forbidden.emplace(p.b, p.a);
        else
            throw std::invalid_argument("sft over Z is not nearest-neighbor");
    }
    TilesetGraph g(x.alphabet);
    const int letters = static_cast<int>(x.alphabet.size());
    for (int a = 0; a < letters; ++a)
        for (int b = 0; b < letters; ++b)
            if (!forbidden.count({a, b})) g.add_edge(a, b);
    return g;
}

TilesetGraph z_window_graph(const AbelianNnSft& x) {
    if (!(x.group.is_free() && x.group.rank == 1))
        throw std::invalid_argument("adapter expects an sft over Z");
    std::int64_t window = 1;
    std::vector<std::pair<std::pair<int, int>, std::int64_t>> rules;  // ((a,b), s > 0)
    for (const auto& p : x.forbidden) {
        std::int64_t s = p.offset[0];
        auto rule = s > 0 ? std::make_pair(p.a, p.b) : std::make_pair(p.b, p.a);
        s = std::llabs(s);
        rules.push_back({rule, s});
        window = std::max(window, s);
    }
    if (window == 1) return to_tileset(x).prune_essential();

    const std::size_t letters = x.alphabet.size();
    std::uint64_t total = 1;
    for (std::int64_t i = 0; i < window; ++i) {
        total *= letters;
        if (total > 4096)
            throw std::runtime_error("window graph too large (more than 4096 words)");
    }
    auto letter_at = [&](std::uint64_t word, std::int64_t pos) {
        for (std::int64_t i = window; i-- > pos + 1;) word /= letters;
        return static_cast<int>(word % letters);
    };
    auto word_valid = [&](std::uint64_t word) {
        for (const auto& [ab, s] : rules)
            for (std::int64_t i = 0; i + s < window; ++i)
                if (letter_at(word, i) == ab.first && letter_at(word, i + s) == ab.second)
                    return false;
        return true;
    };

    std::vector<std::uint64_t> words;
    std::vector<std::string> labels;
    for (std::uint64_t w = 0; w < total; ++w)
        if (word_valid(w)) {
            words.push_back(w);
            std::string label;
            for (std::int64_t i = 0; i < window; ++i) {
                if (i) label += ',';
                label += x.alphabet[letter_at(w, i)];
            }
            labels.push_back(std::move(label));
        }
    TilesetGraph g(labels);
    for (std::size_t a = 0; a < words.size(); ++a)
        for (std::size_t b = 0; b < words.size(); ++b) {
            bool overlap = true;
            for (std::int64_t i = 0; i + 1 < window && overlap; ++i)
                if (letter_at(words[a], i + 1) != letter_at(words[b], i)) overlap = false;
            if (!overlap) continue;
            // Rules spanning the freshly exposed last letter.
            bool ok = true;
            int last = letter_at(words[b], window - 1);
            for (const auto& [ab, s] : rules)
                if (letter_at(words[a], window - s) == ab.first && last == ab.second) {
                    ok = false;
                    break;
                }
            if (ok) g.add_edge(static_cast<int>(a), static_cast<int>(b));
        }
    return g.prune_essential();
}

Nn2Sft to_nn2(const AbelianNnSft& x) {
    if (!(x.group.is_free() && x.group.rank == 2))
        throw std::invalid_argument("adapter expects an sft over Z^2");
    Nn2Sft out(x.alphabet);
    for (const auto& p : x.forbidden) {
        const auto& o = p.offset;
        if (o[0] == 1 && o[1] == 0)
            out.forbid_horizontal(p.a, p.b);
        else if (o[0] == -1 && o[1] == 0)
            out.forbid_horizontal(p.b, p.a);
        else if (o[0] == 0 && o[1] == 1)
            out.forbid_vertical(p.a, p.b);
        else if (o[0] == 0 && o[1] == -1)
            out.forbid_vertical(p.b, p.a);
        else
            throw std::invalid_argument("sft over Z^2 is not nearest-neighbor");
    }
    return out;
}

AbelianNnSft from_tileset(const TilesetGraph& g) {
    AbelianNnSft out{{1, {}}, g.alphabet(), {}};
    const int letters = static_cast<int>(g.alphabet().size());
    for (int a = 0; a < letters; ++a)
        for (int b = 0; b < letters; ++b)
            if (!g.has_edge(a, b)) out.forbidden.push_back({a, b, {1}});
    out.normalize();
    return out;
}

AbelianNnSft from_nn2(const Nn2Sft& sft) {
    AbelianNnSft out{{2, {}}, sft.alphabet(), {}};
    for (auto [a, b] : sft.h_forbidden()) out.forbidden.push_back({a, b, {1, 0}});
    for (auto [a, b] : sft.v_forbidden()) out.forbidden.push_back({a, b, {0, 1}});
    out.normalize();
    return out;
}

std::size_t torus_violations(const AbelianNnSft& x, const TorusConfig& cfg) {
    if (!(x.group.is_free() && x.group.rank == 2))
        throw std::invalid_argument("torus check expects an sft over Z^2");
    std::size_t count = 0;
    for (std::int64_t j = 0; j < cfg.q; ++j)
        for (std::int64_t i = 0; i < cfg.p; ++i)
            for (const auto& p : x.forbidden)
                if (cfg.at(i, j) == p.a && cfg.at(i + p.offset[0], j + p.offset[1]) == p.b)
                    ++count;
    return count;
}

FreeCheckResult free_elements_check(const AbelianNnSft& x, const std::vector<std::int64_t>& g,
                                    std::uint64_t bound) {
    if (!(x.group.is_free() && x.group.rank == 1))
        throw std::invalid_argument("free-elements check expects an sft over Z");
    if (g.size() != 2 || (g[0] == 0 && g[1] == 0))
        throw std::invalid_argument("g must be a non-zero element of Z^2");

    FreeCheckResult res;
    res.bound = bound;
    res.extension = to_nn2(free_extension(x, 2));

    TilesetGraph graph = to_tileset(x).prune_essential();
    if (graph.empty()) {
        res.verdict = FreeCheckResult::Verdict::Free;  // empty action is free
        return res;
    }

    PeriodVector v = PeriodVector{g[0], g[1]}.canonical();
    try {
        if (v.q != 0) {
            // Rows can always be re-shifted to follow (p,q) with q != 0.
            res.witness = periodize(res.extension, v);
            if (!res.witness) throw std::logic_error("expected a (p,q)-stabilized witness");
            res.verdict = FreeCheckResult::Verdict::NotFree;
            return res;
        }
        SemilinearSet m = multiples(graph);
        for (std::int64_t d = 1; d <= v.p; ++d)
            if (v.p % d == 0 && m.contains(static_cast<std::uint64_t>(d))) {
                res.witness = periodize(res.extension, v);
                res.verdict = FreeCheckResult::Verdict::NotFree;
                return res;
            }
        res.verdict = FreeCheckResult::Verdict::Free;
    } catch (const std::runtime_error&) {
        res.verdict = FreeCheckResult::Verdict::Unknown;
    }
    return res;
}

}  // namespace stablab

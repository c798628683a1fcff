#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nroot/clique.hpp"
#include "nroot/quasiparabolic.hpp"

namespace nroot {

// --- simple graphs with SRG certification ----------------------------------

struct Graph {
    std::string source;  // "gamma" or "orthogonality"
    std::vector<DynBitset> adj;

    int size() const { return int(adj.size()); }
    bool edge(int u, int v) const { return adj[u].test(v); }
    long long edge_count() const {
        long long e = 0;
        for (const auto& row : adj) e += row.count();
        return e / 2;
    }
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < size(); ++u)
            adj[u].for_each([&](int v) {
                if (u < v) out.push_back({u, v});
            });
        return out;
    }
};

struct SrgResult {
    bool ok = false;
    int v = 0, k = -1, lambda = -1, mu = -1;
    std::string witness;
};

// Certifies strong regularity: constant degree k, constant common-neighbor
// count lambda over adjacent pairs and mu over non-adjacent pairs. Fails
// with the first witness pair (in particular when no non-adjacent pair
// exists and mu is undefined).
inline SrgResult srg_certify(const Graph& g) {
    SrgResult res;
    res.v = g.size();
    for (int u = 0; u < g.size(); ++u) {
        int deg = g.adj[u].count();
        if (res.k < 0) res.k = deg;
        if (deg != res.k) {
            res.witness = "vertex " + std::to_string(u) + " has degree " + std::to_string(deg);
            return res;
        }
    }
    bool saw_nonadjacent = false;
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v) {
            int common = g.adj[u].intersection_count(g.adj[v]);
            if (g.edge(u, v)) {
                if (res.lambda < 0) res.lambda = common;
                if (common != res.lambda) {
                    res.witness = "adjacent pair (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")";
                    return res;
                }
            } else {
                saw_nonadjacent = true;
                if (res.mu < 0) res.mu = common;
                if (common != res.mu) {
                    res.witness = "non-adjacent pair (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")";
                    return res;
                }
            }
        }
    if (!saw_nonadjacent) {
        res.witness = "no non-adjacent pairs; mu undefined";
        return res;
    }
    res.ok = true;
    return res;
}

// --- E7: Fano plane labellings ----------------------------------------------

using FanoTriple = std::array<int, 3>;          // ascending elements of [7]
using FanoLabelling = std::vector<FanoTriple>;  // 7 triples, sorted

// The alignment-free 7-roots of E7 correspond to labellings of the Fano
// plane: each component embeds as (sum of e_i) - 2(e_0 + e_a + e_b + e_c)
// and contributes the triple {a, b, c}.
class FanoE7 {
public:
    explicit FanoE7(const QPStructure& qp) : qp_(qp), X(qp.nroots()) {
        if (X.root_system().type().family != Family::E7)
            throw std::invalid_argument("Fano labellings require type E7");
        for (int x : qp_.xi_members()) labelling_[x] = labelling_of(x);
    }

    const std::map<int, FanoLabelling>& labellings() const { return labelling_; }

    FanoLabelling labelling_of(int x) const {
        FanoLabelling lab;
        for (uint16_t c : X.components(x)) {
            const Embed& e = X.root_system().embedding(c);
            FanoTriple t{};
            int found = 0;
            if (e[0] != -1) throw std::logic_error("component is not of Fano form");
            for (int j = 1; j < 8; ++j) {
                if (e[j] != 1 && e[j] != -1)
                    throw std::logic_error("component is not of Fano form");
                if (e[j] == -1) {
                    if (found == 3) throw std::logic_error("component is not of Fano form");
                    t[found++] = j;
                }
            }
            if (found != 3) throw std::logic_error("component is not of Fano form");
            lab.push_back(t);
        }
        std::sort(lab.begin(), lab.end());
        return lab;
    }

    static bool is_steiner_triple_system(const FanoLabelling& lab) {
        std::set<std::pair<int, int>> pairs;
        for (const auto& t : lab)
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (!pairs.insert({t[i], t[j]}).second) return false;
        return pairs.size() == 21;
    }

    SweepReport verify_bijection() const {
        SweepReport rep{"fano-bijection"};
        std::set<FanoLabelling> distinct;
        for (const auto& [x, lab] : labelling_) {
            ++rep.checked;
            if (!is_steiner_triple_system(lab))
                rep.fail("labelling of " + std::to_string(x) + " is not an STS");
            distinct.insert(lab);
        }
        ++rep.checked;
        if (distinct.size() != 30 || labelling_.size() != 30)
            rep.fail("expected 30 distinct labellings, got " + std::to_string(distinct.size()));
        return rep;
    }

    // Same-parity labellings intersect in exactly one triple; cross-parity
    // intersection sizes are tabulated only.
    SweepReport verify_pair_intersections(std::map<int, int>* cross_histogram = nullptr) const {
        SweepReport rep{"fano-intersections"};
        auto common = [&](int a, int b) {
            const auto &la = labelling_.at(a), &lb = labelling_.at(b);
            int c = 0;
            for (const auto& t : la) c += std::count(lb.begin(), lb.end(), t);
            return c;
        };
        for (const auto& part : {qp_.xi_even(), qp_.xi_odd()})
            for (size_t i = 0; i < part.size(); ++i)
                for (size_t j = i + 1; j < part.size(); ++j) {
                    ++rep.checked;
                    if (common(part[i], part[j]) != 1)
                        rep.fail("same-parity pair (" + std::to_string(part[i]) + "," +
                                 std::to_string(part[j]) + ")");
                }
        if (cross_histogram)
            for (int a : qp_.xi_even())
                for (int b : qp_.xi_odd()) (*cross_histogram)[common(a, b)]++;
        return rep;
    }

    // lambda(x) = 14 - d, where d counts 3-subsets E of [7] such that the
    // labelling contains no block (E \ {j}) u {i} with j in E and i <= j
    // (E itself included, as the case i = j).
    SweepReport verify_level_formula() const {
        SweepReport rep{"fano-level-formula"};
        std::vector<FanoTriple> all_triples;
        for (int a = 1; a <= 7; ++a)
            for (int b = a + 1; b <= 7; ++b)
                for (int c = b + 1; c <= 7; ++c) all_triples.push_back({a, b, c});
        for (const auto& [x, lab] : labelling_) {
            ++rep.checked;
            int d = 0;
            for (const auto& e : all_triples) {
                bool covered = false;
                for (const auto& blk : lab) {
                    if (blk == e) {
                        covered = true;
                        break;
                    }
                    std::vector<int> in_blk, in_e;
                    for (int v : blk)
                        if (std::find(e.begin(), e.end(), v) == e.end()) in_blk.push_back(v);
                    for (int v : e)
                        if (std::find(blk.begin(), blk.end(), v) == blk.end()) in_e.push_back(v);
                    if (in_blk.size() == 1 && in_e.size() == 1 && in_blk[0] <= in_e[0]) {
                        covered = true;
                        break;
                    }
                }
                if (!covered) ++d;
            }
            if (qp_.level(x) != 14 - d)
                rep.fail("x=" + std::to_string(x) + ": level " + std::to_string(qp_.level(x)) +
                         " but d=" + std::to_string(d));
        }
        return rep;
    }

    // W_I = S_7 permutes the Fano coordinates: s_i swaps labels i and i+1.
    SweepReport verify_equivariance() const {
        SweepReport rep{"fano-equivariance"};
        for (int i = 1; i <= 6; ++i)
            for (const auto& [x, lab] : labelling_) {
                ++rep.checked;
                int y = X.act_simple(i, x);
                FanoLabelling relabelled;
                for (FanoTriple t : lab) {
                    for (int& v : t) v = v == i ? i + 1 : v == i + 1 ? i : v;
                    std::sort(t.begin(), t.end());
                    relabelled.push_back(t);
                }
                std::sort(relabelled.begin(), relabelled.end());
                if (labelling_.at(y) != relabelled)
                    rep.fail("s_" + std::to_string(i) + " at x=" + std::to_string(x));
            }
        return rep;
    }

    static std::string triple_str(const FanoTriple& t) {
        return std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
    }

private:
    const QPStructure& qp_;
    const NRootSet& X;
    std::map<int, FanoLabelling> labelling_;
};

// --- E8: Steiner quadruple systems, the Hadamard matrix, and the graphs ----

class ExceptionalE8 {
public:
    explicit ExceptionalE8(const QPStructure& qp, int workers = 1)
        : qp_(qp), X(qp.nroots()), workers_(workers) {
        if (X.root_system().type().family != Family::E8)
            throw std::invalid_argument("requires type E8");
    }

    // The 14 coplanar quadruples of every 8-root form an S(3,4,8) on its
    // components, closed under complement, with pairwise intersections 0/2.
    SweepReport verify_steiner_all() const {
        SweepReport rep{"steiner-quadruple-systems"};
        for (int x = 0; x < X.size(); ++x) {
            ++rep.checked;
            if (!steiner_ok(x)) rep.fail("x=" + std::to_string(x));
        }
        return rep;
    }

    bool steiner_ok(int x) const {
        const auto& comps = X.components(x);
        std::vector<uint8_t> masks;
        for (const auto& q : X.quads(x)) {
            uint8_t m = 0;
            for (uint16_t c : q.members) {
                int pos = int(std::lower_bound(comps.begin(), comps.end(), c) - comps.begin());
                m |= uint8_t(1) << pos;
            }
            masks.push_back(m);
        }
        if (masks.size() != 14) return false;
        // every 3-subset covered exactly once
        for (int t = 0; t < 256; ++t) {
            if (__builtin_popcount(t) != 3) continue;
            int cover = 0;
            for (uint8_t m : masks)
                if ((m & t) == t) ++cover;
            if (cover != 1) return false;
        }
        std::set<uint8_t> mask_set(masks.begin(), masks.end());
        for (uint8_t m : masks) {
            if (!mask_set.count(uint8_t(~m))) return false;  // complement closure
            for (uint8_t m2 : masks) {
                int inter = __builtin_popcount(m & m2);
                if (m != m2 && inter != 0 && inter != 2) return false;
            }
        }
        return true;
    }

    // The component matrix of theta_C in standard coordinates is an 8x8
    // +-1 matrix with orthogonal rows; the sign patterns of its non-constant
    // rows cut out a Steiner quadruple system.
    SweepReport hadamard_check() const {
        SweepReport rep{"hadamard"};
        std::vector<std::vector<int>> rows;
        for (uint16_t c : X.components(qp_.theta_C())) {
            const Embed& e = X.root_system().embedding(c);
            for (int v : e)
                if (v != 1 && v != -1) {
                    rep.fail("entry not +-1");
                    return rep;
                }
            rows.push_back(e);
        }
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = i + 1; j < rows.size(); ++j) {
                ++rep.checked;
                if (RootSystem::dot(rows[i], rows[j]) != 0)
                    rep.fail("rows " + std::to_string(i) + "," + std::to_string(j) +
                             " not orthogonal");
            }
        ++rep.checked;
        if (std::abs(det8(rows)) != 4096) rep.fail("|det| != 4096");
        // Steiner system from the sign patterns of the non-constant rows.
        std::vector<uint8_t> masks;
        for (const auto& r : rows) {
            uint8_t plus = 0, minus = 0;
            for (int j = 0; j < 8; ++j) (r[j] > 0 ? plus : minus) |= uint8_t(1) << j;
            if (plus == 0 || minus == 0) continue;  // the constant row
            masks.push_back(plus);
            masks.push_back(minus);
        }
        ++rep.checked;
        if (masks.size() != 14) {
            rep.fail("expected 14 sign-pattern quadruples");
            return rep;
        }
        for (int t = 0; t < 256; ++t) {
            if (__builtin_popcount(t) != 3) continue;
            ++rep.checked;
            int cover = 0;
            for (uint8_t m : masks)
                if ((m & t) == t) ++cover;
            if (cover != 1) rep.fail("triple not covered once");
        }
        return rep;
    }

    // Gamma: vertices are the even-level alignment-free 8-roots, adjacent
    // when their component sets are disjoint.
    Graph build_gamma() const {
        const auto& verts = qp_.xi_even();
        Graph g;
        g.source = "gamma";
        g.adj.assign(verts.size(), DynBitset(int(verts.size())));
        for (size_t i = 0; i < verts.size(); ++i)
            for (size_t j = i + 1; j < verts.size(); ++j)
                if (component_intersection(verts[i], verts[j]) == 0) {
                    g.adj[i].set(int(j));
                    g.adj[j].set(int(i));
                }
        return g;
    }

    // Same-parity component intersections take sizes 0 and 2 only.
    SweepReport verify_same_parity_intersections() const {
        SweepReport rep{"xi-parity-intersections"};
        for (const auto& part : {qp_.xi_even(), qp_.xi_odd()})
            for (size_t i = 0; i < part.size(); ++i)
                for (size_t j = i + 1; j < part.size(); ++j) {
                    ++rep.checked;
                    int c = component_intersection(part[i], part[j]);
                    if (c != 0 && c != 2)
                        rep.fail("pair (" + std::to_string(part[i]) + "," +
                                 std::to_string(part[j]) + ") intersects in " +
                                 std::to_string(c));
                }
        return rep;
    }

    // Orthogonality graph on the 120 positive roots.
    Graph build_orthogonality_graph() const {
        const RootSystem& rs = X.root_system();
        Graph g;
        g.source = "orthogonality";
        g.adj.assign(rs.num_positive(), DynBitset(rs.num_positive()));
        for (int i = 0; i < rs.num_positive(); ++i)
            for (int j = 0; j < rs.num_positive(); ++j)
                if (i != j && rs.orthogonal(i, j)) g.adj[i].set(j);
        return g;
    }

    std::vector<std::vector<uint16_t>> max_cliques(const Graph& g) const {
        return enumerate_cliques(g.adj, 8, workers_);
    }

    struct DistinguishReport {
        // stage 1: 8-cliques through each edge
        std::vector<long long> gamma_max_clique_values;
        std::vector<long long> ortho_max_clique_values;
        // stage 2: common-max-clique counts over all vertex pairs
        bool pair_histograms_differ = false;
        // stage 3: 5-cliques through each edge
        std::vector<long long> gamma_k5_values;
        std::vector<long long> ortho_k5_values;
        int deciding_stage = 0;  // 0 = inconclusive
        bool conclusive = false;
    };

    // Classical non-isomorphism certificate via isomorphism-invariant edge
    // statistics, escalating while a statistic ties: 8-cliques through an
    // edge, then common-clique counts over vertex pairs, then 5-cliques
    // through an edge. The last one settles it: the orthogonality graph is
    // edge-constant while the edges of Gamma split into two types.
    DistinguishReport distinguish(const Graph& gamma, const Graph& ortho) const {
        DistinguishReport rep;
        rep.gamma_max_clique_values = edge_clique_values(gamma);
        rep.ortho_max_clique_values = edge_clique_values(ortho);
        if (rep.ortho_max_clique_values.size() == 1 &&
            rep.gamma_max_clique_values.size() >= 2) {
            rep.deciding_stage = 1;
            rep.conclusive = true;
            return rep;
        }
        rep.pair_histograms_differ =
            pair_clique_histogram(gamma) != pair_clique_histogram(ortho);
        if (rep.pair_histograms_differ) {
            rep.deciding_stage = 2;
            rep.conclusive = true;
            return rep;
        }
        rep.gamma_k5_values = edge_k5_values(gamma);
        rep.ortho_k5_values = edge_k5_values(ortho);
        if (rep.ortho_k5_values.size() == 1 && rep.gamma_k5_values.size() >= 2) {
            rep.deciding_stage = 3;
            rep.conclusive = true;
        }
        return rep;
    }

    std::vector<long long> edge_clique_values(const Graph& g) const {
        std::map<std::pair<int, int>, long long> per_edge;
        for (auto [u, v] : g.edges()) per_edge[{u, v}] = 0;
        for (const auto& c : max_cliques(g))
            for (size_t i = 0; i < c.size(); ++i)
                for (size_t j = i + 1; j < c.size(); ++j) per_edge[{c[i], c[j]}]++;
        std::set<long long> values;
        for (const auto& [e, cnt] : per_edge) values.insert(cnt);
        return {values.begin(), values.end()};
    }

    std::vector<long long> edge_k5_values(const Graph& g) const {
        std::set<long long> values;
        for (auto [u, v] : g.edges()) {
            DynBitset common = g.adj[u] & g.adj[v];
            long long tri = 0;
            std::vector<int> w = common.to_vector();
            for (size_t i = 0; i < w.size(); ++i)
                for (size_t j = i + 1; j < w.size(); ++j)
                    if (g.edge(w[i], w[j]))
                        tri += (common & g.adj[w[i]] & g.adj[w[j]]).count();
            values.insert(tri / 3);
        }
        return {values.begin(), values.end()};
    }

    std::map<long long, long long> pair_clique_histogram(const Graph& g) const {
        std::map<std::pair<int, int>, long long> per_pair;
        for (const auto& c : max_cliques(g))
            for (size_t i = 0; i < c.size(); ++i)
                for (size_t j = i + 1; j < c.size(); ++j) per_pair[{c[i], c[j]}]++;
        std::map<long long, long long> hist;
        long long pairs = (long long)g.size() * (g.size() - 1) / 2;
        for (const auto& [e, cnt] : per_pair) hist[cnt]++;
        hist[0] = pairs - (long long)per_pair.size();
        return hist;
    }

    int component_intersection(int x, int y) const {
        const auto &a = X.components(x), &b = X.components(y);
        int c = 0;
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) ++i;
            else if (b[j] < a[i]) ++j;
            else ++c, ++i, ++j;
        }
        return c;
    }

    // Every component of every element of X_I carries alpha_x with
    // coefficient exactly 1.
    SweepReport verify_x_height_one() const {
        SweepReport rep{"xi-x-height"};
        int xi = qp_.alpha_x_index() - 1;
        for (int x : qp_.xi_members())
            for (uint16_t c : X.components(x)) {
                ++rep.checked;
                if (X.root_system().root(c)[xi] != 1)
                    rep.fail("component of x=" + std::to_string(x));
            }
        return rep;
    }

private:
    static long long det8(const std::vector<std::vector<int>>& rows) {
        // Bareiss fraction-free elimination on a copy.
        std::vector<std::vector<long long>> a(8, std::vector<long long>(8));
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) a[i][j] = rows[i][j];
        long long prev = 1, sign = 1;
        for (int k = 0; k < 7; ++k) {
            if (a[k][k] == 0) {
                int p = k + 1;
                while (p < 8 && a[p][k] == 0) ++p;
                if (p == 8) return 0;
                std::swap(a[k], a[p]);
                sign = -sign;
            }
            for (int i = k + 1; i < 8; ++i)
                for (int j = k + 1; j < 8; ++j)
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            prev = a[k][k];
        }
        return sign * a[7][7];
    }

    const QPStructure& qp_;
    const NRootSet& X;
    int workers_;
};

}  // namespace nroot

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nroot/clique.hpp"
#include "nroot/root_system.hpp"
#include "nroot/util.hpp"

namespace nroot {

using Components = std::vector<uint16_t>;  // sorted positive-root ids

// All positive n-roots of a root system, identified with their component
// sets: the maximal sets of mutually orthogonal positive roots. Provides the
// W-action with componentwise absolute values, the coplanar quadruples of
// each n-root, and their crossing/nesting/alignment labels.
class NRootSet {
public:
    struct Quad {
        std::array<uint16_t, 4> members;  // ascending root ids
        uint16_t half_sum;                // id of (sum of members)/2
        char label;                       // 'A', 'C', or 'N'
    };

    struct D4Partition {
        std::array<uint16_t, 4> crossing, nesting, alignment;
    };

    struct Counts {
        int A = 0, C = 0, N = 0;
        int level() const { return C + 2 * N; }
    };

    explicit NRootSet(const RootSystem& rs, int workers = 1) : rs_(rs) {
        enumerate(workers);
        build_action_table(workers);
        build_quads();
    }

    const RootSystem& root_system() const { return rs_; }
    int size() const { return int(elements_.size()); }
    int rank() const { return rs_.rank(); }
    const std::vector<Components>& elements() const { return elements_; }
    const Components& components(int x) const { return elements_[x]; }

    int id_of(const Components& comps) const {
        auto it = index_.find(comps);
        return it == index_.end() ? -1 : it->second;
    }

    // Number of coplanar quadruples per n-root: C(k,2), 7, or 14.
    int M() const { return M_; }

    const std::vector<Quad>& quads(int x) const { return quads_[x]; }
    const Counts& counts(int x) const { return counts_[x]; }
    int level(int x) const { return counts_[x].level(); }

    bool has_component(int x, int root_id) const {
        const auto& c = elements_[x];
        return std::binary_search(c.begin(), c.end(), uint16_t(root_id));
    }

    // --- W-action -----------------------------------------------------

    int act_reflection(int refl_root_id, int x) const {
        return act_[size_t(refl_root_id) * elements_.size() + x];
    }

    // Image and the sign picked up by the product of components.
    std::pair<int, int> act_reflection_signed(int refl_root_id, int x) const {
        int flips = 0;
        Components img(rank());
        for (int i = 0; i < rank(); ++i) {
            auto ri = rs_.reflect_root(refl_root_id, elements_[x][i]);
            img[i] = uint16_t(ri.id);
            if (ri.sign < 0) ++flips;
        }
        std::sort(img.begin(), img.end());
        int y = id_of(img);
        if (y < 0) throw std::logic_error("reflection left the n-root set");
        return {y, flips % 2 ? -1 : 1};
    }

    int act_simple(int i, int x) const {  // 1-based simple index
        return act_reflection(rs_.simple_id(i), x);
    }

    // Word acts like act_word on roots: rightmost letter first.
    int act_word(std::span<const int> word, int x) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it) x = act_simple(*it, x);
        return x;
    }

    std::pair<int, int> act_word_signed(std::span<const int> word, int x) const {
        int sign = 1;
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            auto [y, s] = act_reflection_signed(rs_.simple_id(*it), x);
            x = y;
            sign *= s;
        }
        return {x, sign};
    }

    // --- coplanar quadruples -------------------------------------------

    // Labels a quadruple by the height rules: with sorted component heights
    // h1 <= h2 <= h3 <= h4, an alignment has h1+h2+h3 < h4, a nesting has
    // h1+h2+h3 > h4 and h2+h3 > h1+h4, and a crossing is the remaining case.
    // The two equalities cannot occur for a coplanar quadruple.
    char classify_heights(const std::array<uint16_t, 4>& q) const {
        std::array<int, 4> h;
        for (int i = 0; i < 4; ++i) h[i] = rs_.height(q[i]);
        std::sort(h.begin(), h.end());
        if (h[0] + h[1] + h[2] == h[3] || h[1] + h[2] == h[0] + h[3])
            throw std::logic_error("forbidden height equality in coplanar quadruple");
        if (h[0] + h[1] + h[2] < h[3]) return 'A';
        if (h[1] + h[2] > h[0] + h[3]) return 'N';
        return 'C';
    }

    // Ground-truth classification through the D4 subsystem associated to q.
    char classify_oracle(const std::array<uint16_t, 4>& q) const {
        D4Partition p = d4_partition(q);
        std::array<uint16_t, 4> s = q;
        std::sort(s.begin(), s.end());
        if (s == p.crossing) return 'C';
        if (s == p.nesting) return 'N';
        if (s == p.alignment) return 'A';
        throw std::logic_error("quadruple not found in its own D4 partition");
    }

    // Splits the induced positive system of the D4 subsystem of q into its
    // crossing, nesting, and alignment quadruples. The quadruples are built
    // from the induced simple system {a1, a2, a3, a4} with a2 the branch
    // node: the crossing is {a1+a2, a2+a3, a2+a4, a1+a2+a3+a4}, the nesting
    // is {a2, a1+a2+a3, a1+a2+a4, a2+a3+a4}, and the alignment is
    // {a1, a3, a4, a1+2*a2+a3+a4}.
    D4Partition d4_partition(const std::array<uint16_t, 4>& q) const {
        // Induced positive system: q itself and the positive roots among
        // (+-b1 +- b2 +- b3 +- b4)/2.
        std::vector<int> psi(q.begin(), q.end());
        for (int mask = 0; mask < 16; ++mask) {
            Coeffs sum(rank(), 0);
            for (int i = 0; i < 4; ++i) {
                const Coeffs& b = rs_.root(q[i]);
                int s = (mask >> i) & 1 ? 1 : -1;
                for (int j = 0; j < rank(); ++j) sum[j] += s * b[j];
            }
            bool even = true;
            for (int v : sum) even = even && v % 2 == 0;
            if (!even) throw std::logic_error("quadruple is not coplanar");
            for (int& v : sum) v /= 2;
            if (!RootSystem::is_nonneg(sum)) continue;
            int id = rs_.root_id(sum);
            if (id < 0) throw std::logic_error("half sum is not a root");
            psi.push_back(id);
        }
        std::sort(psi.begin(), psi.end());
        if (psi.size() != 12) throw std::logic_error("induced D4 system is not 12 roots");

        // Induced simple roots: the elements that are not sums of two
        // elements of the induced positive system.
        std::vector<Coeffs> vecs;
        for (int id : psi) vecs.push_back(rs_.root(id));
        std::vector<int> simple;
        for (int i = 0; i < 12; ++i) {
            bool decomposable = false;
            for (int a = 0; a < 12 && !decomposable; ++a)
                for (int b = a; b < 12 && !decomposable; ++b) {
                    Coeffs s(rank());
                    for (int j = 0; j < rank(); ++j) s[j] = vecs[a][j] + vecs[b][j];
                    if (s == vecs[i]) decomposable = true;
                }
            if (!decomposable) simple.push_back(psi[i]);
        }
        if (simple.size() != 4) throw std::logic_error("induced simple system is not 4 roots");

        // Branch node: pairing -1 with the three leaves.
        int branch = -1;
        for (int i = 0; i < 4; ++i) {
            int adj = 0;
            for (int j = 0; j < 4; ++j)
                if (j != i && rs_.bilinear_ids(simple[i], simple[j]) == -1) ++adj;
            if (adj == 3) branch = i;
        }
        if (branch < 0) throw std::logic_error("induced D4 diagram has no branch node");
        Coeffs a2 = rs_.root(simple[branch]);
        std::vector<Coeffs> leaves;
        for (int i = 0; i < 4; ++i)
            if (i != branch) leaves.push_back(rs_.root(simple[i]));

        auto combo = [&](std::initializer_list<std::pair<const Coeffs*, int>> parts) {
            Coeffs s(rank(), 0);
            for (auto [v, c] : parts)
                for (int j = 0; j < rank(); ++j) s[j] += c * (*v)[j];
            int id = rs_.root_id(s);
            if (id < 0) throw std::logic_error("expected root missing from D4 subsystem");
            return uint16_t(id);
        };
        const Coeffs &a1 = leaves[0], &a3 = leaves[1], &a4 = leaves[2];
        D4Partition p;
        p.crossing = {combo({{&a1, 1}, {&a2, 1}}), combo({{&a2, 1}, {&a3, 1}}),
                      combo({{&a2, 1}, {&a4, 1}}),
                      combo({{&a1, 1}, {&a2, 1}, {&a3, 1}, {&a4, 1}})};
        p.nesting = {combo({{&a2, 1}}), combo({{&a1, 1}, {&a2, 1}, {&a3, 1}}),
                     combo({{&a1, 1}, {&a2, 1}, {&a4, 1}}),
                     combo({{&a2, 1}, {&a3, 1}, {&a4, 1}})};
        p.alignment = {combo({{&a1, 1}}), combo({{&a3, 1}}), combo({{&a4, 1}}),
                       combo({{&a1, 1}, {&a2, 2}, {&a3, 1}, {&a4, 1}})};
        std::sort(p.crossing.begin(), p.crossing.end());
        std::sort(p.nesting.begin(), p.nesting.end());
        std::sort(p.alignment.begin(), p.alignment.end());
        std::vector<int> all;
        for (const auto& part : {p.crossing, p.nesting, p.alignment})
            all.insert(all.end(), part.begin(), part.end());
        std::sort(all.begin(), all.end());
        if (all != psi) throw std::logic_error("quadruples do not partition the D4 system");
        return p;
    }

    // The unique coplanar quadruple of x moved by s_alpha, or nullopt when
    // +-alpha is a component (the reflection only flips a sign).
    std::optional<Quad> moved_quadruple(int refl_root_id, int x) const {
        if (has_component(x, refl_root_id)) return std::nullopt;
        std::array<uint16_t, 4> members{};
        int found = 0;
        for (uint16_t c : elements_[x])
            if (!rs_.orthogonal(refl_root_id, c)) {
                if (found == 4) throw std::logic_error("more than 4 components moved");
                members[found++] = c;
            }
        if (found != 4) throw std::logic_error("reflection moved fewer than 4 components");
        Quad q;
        q.members = members;
        q.half_sum = half_sum_id(members);
        q.label = classify_heights(members);
        return q;
    }

    // --- sums and matchings --------------------------------------------

    Coeffs sigma(int x) const {
        Coeffs s(rank(), 0);
        for (uint16_t c : elements_[x])
            for (int j = 0; j < rank(); ++j) s[j] += rs_.root(c)[j];
        return s;
    }

    // Type D only: the perfect matching {i, j} given by the collinear pairs
    // {e_i +- e_j} of x. Pairs are 1-based, each sorted, and the list is
    // sorted. Round-trips with from_matching.
    std::vector<std::pair<int, int>> matching_of(int x) const {
        require_type_d();
        std::map<std::pair<int, int>, int> blocks;
        for (uint16_t c : elements_[x]) {
            const Embed& e = rs_.embedding(c);
            int a = -1, b = -1;
            for (int j = 0; j < rs_.embed_dim(); ++j)
                if (e[j] != 0) (a < 0 ? a : b) = j;
            blocks[{a + 1, b + 1}]++;
        }
        std::vector<std::pair<int, int>> out;
        for (auto& [blk, cnt] : blocks) {
            if (cnt != 2) throw std::logic_error("component pair is not collinear");
            out.push_back(blk);
        }
        return out;
    }

    int from_matching(const std::vector<std::pair<int, int>>& m) const {
        require_type_d();
        Components comps;
        for (auto [i, j] : m) {
            if (i > j) std::swap(i, j);
            Embed diff(rank(), 0), sum(rank(), 0);
            diff[i - 1] = 1, diff[j - 1] = -1;
            sum[i - 1] = 1, sum[j - 1] = 1;
            for (const Embed& e : {diff, sum}) {
                int id = embed_root_id(e);
                if (id < 0) throw std::invalid_argument("matching block out of range");
                comps.push_back(uint16_t(id));
            }
        }
        std::sort(comps.begin(), comps.end());
        int x = id_of(comps);
        if (x < 0) throw std::invalid_argument("matching does not describe an n-root");
        return x;
    }

    int embed_root_id(const Embed& e) const {
        for (int id = 0; id < rs_.num_positive(); ++id)
            if (rs_.embedding(id) == e) return id;
        return -1;
    }

private:
    void require_type_d() const {
        if (rs_.type().family != Family::D)
            throw std::invalid_argument("matchings are defined for type D only");
    }

    uint16_t half_sum_id(const std::array<uint16_t, 4>& members) const {
        Coeffs sum(rank(), 0);
        for (uint16_t c : members)
            for (int j = 0; j < rank(); ++j) sum[j] += rs_.root(c)[j];
        for (int& v : sum) {
            if (v % 2) throw std::logic_error("quadruple sum is odd");
            v /= 2;
        }
        int id = rs_.root_id(sum);
        if (id < 0) throw std::logic_error("half sum is not a root");
        return uint16_t(id);
    }

    // Clique search for all n-element orthogonal sets over the orthogonality
    // bit-matrix. Maximal orthogonal sets in these types have exactly n
    // elements, which the verify suite double-checks by a no-extension test.
    void enumerate(int workers) {
        std::vector<DynBitset> adj;
        adj.reserve(rs_.num_positive());
        for (int i = 0; i < rs_.num_positive(); ++i) adj.push_back(rs_.orth_row(i));
        elements_ = enumerate_cliques(adj, rank(), workers);
        std::sort(elements_.begin(), elements_.end());
        for (size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = int(i);
    }

    void build_action_table(int workers) {
        int m = rs_.num_positive();
        size_t sz = elements_.size();
        act_.resize(size_t(m) * sz);
        parallel_for(m, workers, [&](int r) {
            Components img(rank());
            for (size_t x = 0; x < sz; ++x) {
                for (int i = 0; i < rank(); ++i)
                    img[i] = uint16_t(rs_.reflect_root(r, elements_[x][i]).id);
                std::sort(img.begin(), img.end());
                int y = id_of(img);
                if (y < 0) throw std::logic_error("reflection left the n-root set");
                act_[size_t(r) * sz + x] = y;
            }
        });
    }

    void build_quads() {
        int n = rank();
        quads_.resize(elements_.size());
        counts_.resize(elements_.size());
        for (size_t x = 0; x < elements_.size(); ++x) {
            const Components& comps = elements_[x];
            for_each_subset(n, 4, [&](const std::vector<int>& idx) {
                std::array<uint16_t, 4> mem{comps[idx[0]], comps[idx[1]], comps[idx[2]],
                                            comps[idx[3]]};
                Coeffs sum(n, 0);
                for (uint16_t c : mem)
                    for (int j = 0; j < n; ++j) sum[j] += rs_.root(c)[j];
                bool even = true;
                for (int v : sum) even = even && v % 2 == 0;
                if (!even) return;
                for (int& v : sum) v /= 2;
                int half = rs_.root_id(sum);
                if (half < 0) return;
                Quad q{mem, uint16_t(half), classify_heights(mem)};
                quads_[x].push_back(q);
                auto& cnt = counts_[x];
                (q.label == 'A' ? cnt.A : q.label == 'C' ? cnt.C : cnt.N)++;
            });
        }
        M_ = quads_.empty() ? 0 : int(quads_[0].size());
        for (const auto& qs : quads_)
            if (int(qs.size()) != M_)
                throw std::logic_error("coplanar quadruple count is not constant");
    }

    const RootSystem& rs_;
    std::vector<Components> elements_;
    std::map<Components, int> index_;
    std::vector<int> act_;  // act_[r * size + x]
    std::vector<std::vector<Quad>> quads_;
    std::vector<Counts> counts_;
    int M_ = 0;
};

}  // namespace nroot

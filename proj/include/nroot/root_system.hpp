#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nroot/bitset.hpp"

namespace nroot {

enum class Family { D, E7, E8 };

struct SystemType {
    Family family = Family::D;
    int rank = 4;

    static SystemType make(Family f, int rank) {
        SystemType st{f, rank};
        st.validate();
        return st;
    }

    static SystemType parse(const std::string& s) {
        if (s == "E7") return make(Family::E7, 7);
        if (s == "E8") return make(Family::E8, 8);
        if (s.size() >= 2 && s[0] == 'D') {
            int n = 0;
            try {
                n = std::stoi(s.substr(1));
            } catch (...) {
                throw std::invalid_argument("unknown system type: " + s);
            }
            return make(Family::D, n);
        }
        throw std::invalid_argument("unknown system type: " + s);
    }

    void validate() const {
        switch (family) {
            case Family::D:
                if (rank < 4 || rank % 2 != 0)
                    throw std::invalid_argument(
                        "type D requires an even rank >= 4, got " + std::to_string(rank));
                break;
            case Family::E7:
                if (rank != 7) throw std::invalid_argument("E7 has rank 7");
                break;
            case Family::E8:
                if (rank != 8) throw std::invalid_argument("E8 has rank 8");
                break;
        }
    }

    std::string name() const {
        switch (family) {
            case Family::D: return "D" + std::to_string(rank);
            case Family::E7: return "E7";
            case Family::E8: return "E8";
        }
        return "?";
    }

    int coxeter_number() const {
        switch (family) {
            case Family::D: return 2 * rank - 2;
            case Family::E7: return 18;
            case Family::E8: return 30;
        }
        return 0;
    }

    bool operator==(const SystemType& o) const {
        return family == o.family && rank == o.rank;
    }
};

using Coeffs = std::vector<int>;  // coordinates over the simple roots
using Embed = std::vector<int>;   // Euclidean coordinates (integral here)

// A simply laced root system of type D_n (n even), E7, or E8 with exact
// integer data: Gram matrix of the bilinear form B, every positive root in
// simple-root coordinates, heights, and the Euclidean embedding. Immutable
// once built; all queries are const.
class RootSystem {
public:
    struct RootImage {
        int16_t id;   // id of |s_mirror(target)|
        int8_t sign;  // +1 if the image is positive, -1 if it was negated
    };

    explicit RootSystem(SystemType st) : type_(st) {
        st.validate();
        build_gram();
        build_embedding_basis();
        enumerate_positive_roots();
        build_tables();
    }

    const SystemType& type() const { return type_; }
    int rank() const { return type_.rank; }
    int num_positive() const { return int(roots_.size()); }
    const std::vector<Coeffs>& positive_roots() const { return roots_; }
    const Coeffs& root(int id) const { return roots_[id]; }
    const std::vector<std::vector<int>>& gram() const { return gram_; }
    int height(int id) const { return heights_[id]; }
    const std::vector<int>& heights() const { return heights_; }
    int highest() const { return highest_; }

    int bilinear(const Coeffs& a, const Coeffs& b) const {
        int n = rank();
        if (int(a.size()) != n || int(b.size()) != n)
            throw std::invalid_argument("bilinear: dimension mismatch");
        long long s = 0;
        for (int i = 0; i < n; ++i) {
            if (!a[i]) continue;
            long long row = 0;
            for (int j = 0; j < n; ++j) row += (long long)gram_[i][j] * b[j];
            s += (long long)a[i] * row;
        }
        return int(s);
    }

    int bilinear_ids(int a, int b) const { return bmat_[a * roots_.size() + b]; }
    bool orthogonal(int a, int b) const { return bilinear_ids(a, b) == 0; }
    const DynBitset& orth_row(int id) const { return orth_[id]; }

    // s_mirror(target) = target - B(mirror, target) * mirror
    Coeffs reflect(const Coeffs& mirror, Coeffs target) const {
        int c = bilinear(mirror, target);
        for (int i = 0; i < rank(); ++i) target[i] -= c * mirror[i];
        return target;
    }

    Coeffs reflect_simple(int i, Coeffs target) const {  // i is 1-based
        return reflect(simple(i), std::move(target));
    }

    // Applies the group element s_{w[0]} s_{w[1]} ... s_{w[k-1]} to v,
    // i.e. the rightmost letter acts first. Letters are 1-based.
    Coeffs act_word(std::span<const int> word, Coeffs v) const {
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            int i = *it;
            if (i < 1 || i > rank())
                throw std::invalid_argument("act_word: letter out of range");
            v = reflect_simple(i, std::move(v));
        }
        return v;
    }

    Coeffs simple(int i) const {  // 1-based
        Coeffs c(rank(), 0);
        c.at(i - 1) = 1;
        return c;
    }
    int simple_id(int i) const { return simple_ids_[i - 1]; }

    int root_id(const Coeffs& c) const {
        auto it = index_.find(c);
        return it == index_.end() ? -1 : it->second;
    }

    // Looks up |c|: flips the sign if any coordinate is negative.
    int abs_root_id(const Coeffs& c) const {
        for (int x : c) {
            if (x > 0) return root_id(c);
            if (x < 0) {
                Coeffs neg(c.size());
                for (size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
                return root_id(neg);
            }
        }
        return -1;
    }

    static bool is_nonneg(const Coeffs& c) {
        for (int x : c)
            if (x < 0) return false;
        return true;
    }

    int embed_dim() const { return int(embed_basis_[0].size()); }
    // B equals (Euclidean inner product) / embed_scale().
    int embed_scale() const { return type_.family == Family::D ? 1 : 4; }
    const Embed& embedding(int id) const { return embed_[id]; }

    Embed embed_vector(const Coeffs& c) const {
        Embed v(embed_dim(), 0);
        for (int i = 0; i < rank(); ++i) {
            if (!c[i]) continue;
            for (int j = 0; j < embed_dim(); ++j) v[j] += c[i] * embed_basis_[i][j];
        }
        return v;
    }

    static long long dot(const Embed& a, const Embed& b) {
        long long s = 0;
        for (size_t i = 0; i < a.size(); ++i) s += (long long)a[i] * b[i];
        return s;
    }

    RootImage reflect_root(int mirror_id, int target_id) const {
        return rimg_[mirror_id * roots_.size() + target_id];
    }

private:
    void build_gram() {
        int n = rank();
        std::vector<std::pair<int, int>> edges;  // 1-based Dynkin edges
        switch (type_.family) {
            case Family::D:
                for (int i = 1; i <= n - 2; ++i) edges.push_back({i, i + 1});
                edges.push_back({n - 2, n});
                break;
            case Family::E7:
                edges = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}};
                break;
            case Family::E8:
                edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
                break;
        }
        gram_.assign(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i) gram_[i][i] = 2;
        for (auto [a, b] : edges) gram_[a - 1][b - 1] = gram_[b - 1][a - 1] = -1;
    }

    void build_embedding_basis() {
        int n = rank();
        embed_basis_.assign(n, {});
        auto unit = [](int dim, int i, int v) {
            Embed e(dim, 0);
            e[i] = v;
            return e;
        };
        switch (type_.family) {
            case Family::D:
                // alpha_i = e_i - e_{i+1} (i < n), alpha_n = e_{n-1} + e_n
                for (int i = 1; i < n; ++i) {
                    Embed e(n, 0);
                    e[i - 1] = 1;
                    e[i] = -1;
                    embed_basis_[i - 1] = e;
                }
                {
                    Embed e(n, 0);
                    e[n - 2] = 1;
                    e[n - 1] = 1;
                    embed_basis_[n - 1] = e;
                }
                break;
            case Family::E7:
                // Fano coordinates e_0..e_7: alpha_i = 2(e_i - e_{i+1}) for
                // i <= 6, alpha_7 = -e_0-e_1-e_2-e_3+e_4+e_5+e_6+e_7.
                for (int i = 1; i <= 6; ++i) {
                    Embed e(8, 0);
                    e[i] = 2;
                    e[i + 1] = -2;
                    embed_basis_[i - 1] = e;
                }
                embed_basis_[6] = {-1, -1, -1, -1, 1, 1, 1, 1};
                (void)unit;
                break;
            case Family::E8:
                // Standard coordinates e_1..e_8 (stored 0-based):
                // alpha_1 = e_1-e_2-...-e_7+e_8, alpha_2 = 2(e_1+e_2),
                // alpha_i = 2(e_{i-1} - e_{i-2}) for 3 <= i <= 8.
                embed_basis_[0] = {1, -1, -1, -1, -1, -1, -1, 1};
                embed_basis_[1] = {2, 2, 0, 0, 0, 0, 0, 0};
                for (int i = 3; i <= 8; ++i) {
                    Embed e(8, 0);
                    e[i - 2] = 2;
                    e[i - 3] = -2;
                    embed_basis_[i - 1] = e;
                }
                break;
        }
    }

    void enumerate_positive_roots() {
        int n = rank();
        std::set<Coeffs> seen;
        std::vector<Coeffs> queue;
        for (int i = 1; i <= n; ++i) {
            Coeffs c(n, 0);
            c[i - 1] = 1;
            seen.insert(c);
            queue.push_back(c);
        }
        // Closure under simple reflections, keeping positive roots only.
        while (!queue.empty()) {
            Coeffs c = queue.back();
            queue.pop_back();
            for (int i = 1; i <= n; ++i) {
                Coeffs img = reflect_simple(i, c);
                if (is_nonneg(img) && !seen.count(img)) {
                    seen.insert(img);
                    queue.push_back(img);
                }
            }
        }
        roots_.assign(seen.begin(), seen.end());
        std::sort(roots_.begin(), roots_.end(), [](const Coeffs& a, const Coeffs& b) {
            int ha = std::accumulate(a.begin(), a.end(), 0);
            int hb = std::accumulate(b.begin(), b.end(), 0);
            if (ha != hb) return ha < hb;
            return a < b;
        });
        heights_.resize(roots_.size());
        for (size_t i = 0; i < roots_.size(); ++i) {
            heights_[i] = std::accumulate(roots_[i].begin(), roots_[i].end(), 0);
            index_[roots_[i]] = int(i);
        }
        // The highest root dominates every other root coefficientwise.
        highest_ = int(roots_.size()) - 1;
        for (size_t i = 0; i < roots_.size(); ++i)
            for (int j = 0; j < n; ++j)
                if (roots_[i][j] > roots_[highest_][j])
                    throw std::logic_error("highest root is not dominant");
        simple_ids_.resize(n);
        for (int i = 1; i <= n; ++i) simple_ids_[i - 1] = root_id(simple(i));
    }

    void build_tables() {
        int m = num_positive();
        embed_.resize(m);
        for (int i = 0; i < m; ++i) embed_[i] = embed_vector(roots_[i]);
        bmat_.resize(size_t(m) * m);
        orth_.assign(m, DynBitset(m));
        long long scale = embed_scale();
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                long long d = dot(embed_[a], embed_[b]);
                bmat_[size_t(a) * m + b] = int8_t(d / scale);
                if (d == 0) orth_[a].set(b);
            }
        rimg_.resize(size_t(m) * m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                int c = bmat_[size_t(a) * m + b];
                Coeffs img = roots_[b];
                if (c != 0)
                    for (int i = 0; i < rank(); ++i) img[i] -= c * roots_[a][i];
                bool pos = is_nonneg(img);
                if (!pos)
                    for (int& x : img) x = -x;
                int id = root_id(img);
                if (id < 0) throw std::logic_error("reflection left the root system");
                rimg_[size_t(a) * m + b] = {int16_t(id), int8_t(pos ? 1 : -1)};
            }
    }

    SystemType type_;
    std::vector<std::vector<int>> gram_;
    std::vector<Embed> embed_basis_;
    std::vector<Coeffs> roots_;
    std::vector<int> heights_;
    std::vector<Embed> embed_;
    std::map<Coeffs, int> index_;
    std::vector<int> simple_ids_;
    int highest_ = -1;
    std::vector<int8_t> bmat_;
    std::vector<DynBitset> orth_;
    std::vector<RootImage> rimg_;
};

}  // namespace nroot

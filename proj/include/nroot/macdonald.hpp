#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nroot/nroot_set.hpp"
#include "nroot/poly.hpp"
#include "nroot/qpoly.hpp"
#include "nroot/util.hpp"

namespace nroot {

// Formal linear combination of positive n-roots with exact rational
// coefficients; zero coefficients are never stored.
using MacElement = std::map<int, Rat>;

inline void mac_add(MacElement& e, int x, const Rat& c) {
    auto it = e.find(x);
    if (it == e.end()) {
        if (c != 0) e.emplace(x, c);
        return;
    }
    it->second += c;
    if (it->second == 0) e.erase(it);
}

inline int sigma_height(const Coeffs& s) {
    return std::accumulate(s.begin(), s.end(), 0);
}

// The Macdonald representation spanned by the positive n-roots: Ptolemy
// rewriting to noncrossing / nonnesting normal form, the two bases, the
// change-of-basis matrix, and the polynomial-expansion oracle.
class MacEngine {
public:
    explicit MacEngine(const NRootSet& x) : X(x) {
        for (int i = 0; i < X.size(); ++i) {
            auto c = X.counts(i);
            if (c.C == 0) noncrossing_.push_back(i);
            if (c.N == 0) nonnesting_.push_back(i);
            if (c.C == X.M()) theta_C_ = i;
        }
        nc_pos_.assign(X.size(), -1);
        for (size_t i = 0; i < noncrossing_.size(); ++i) nc_pos_[noncrossing_[i]] = int(i);
        nc_memo_.resize(X.size());
        nn_memo_.resize(X.size());
    }

    const NRootSet& nroots() const { return X; }
    const std::vector<int>& noncrossing_basis() const { return noncrossing_; }
    const std::vector<int>& nonnesting_basis() const { return nonnesting_; }
    int dimension() const { return int(noncrossing_.size()); }
    int theta_C() const { return theta_C_; }

    // Replaces the crossing q inside x by the nesting and alignment
    // quadruples of the same D4 subsystem. Returns (nesting result,
    // alignment result); x = first + second in the representation.
    std::pair<int, int> ptolemy_rewrite_C(int x, const NRootSet::Quad& q) const {
        if (q.label != 'C') throw std::invalid_argument("quadruple is not a crossing");
        auto p = X.d4_partition(q.members);
        return {substitute(x, q.members, p.nesting), substitute(x, q.members, p.alignment)};
    }

    // Replaces the nesting q inside x: returns (crossing result, alignment
    // result); x = first - second.
    std::pair<int, int> ptolemy_rewrite_N(int x, const NRootSet::Quad& q) const {
        if (q.label != 'N') throw std::invalid_argument("quadruple is not a nesting");
        auto p = X.d4_partition(q.members);
        return {substitute(x, q.members, p.crossing), substitute(x, q.members, p.alignment)};
    }

    // Expansion of x in the noncrossing basis. Coefficients are nonnegative
    // integers; entries are (n-root id, coefficient), sorted by id. The memo
    // is shared across threads: entries are written once under the lock and
    // never change, so returned references stay valid.
    const std::vector<std::pair<int, long long>>& nc_expansion(int x) const {
        std::lock_guard<std::recursive_mutex> lock(memo_mu_);
        if (!nc_memo_[x]) {
            if (X.counts(x).C == 0) {
                nc_memo_[x] = {{x, 1}};
            } else {
                auto [xn, xa] = ptolemy_rewrite_C(x, first_with_label(x, 'C'));
                nc_memo_[x] = merge(nc_expansion(xn), nc_expansion(xa), 1);
            }
        }
        return *nc_memo_[x];
    }

    // Expansion of x in the nonnesting basis (integer, signs arbitrary).
    const std::vector<std::pair<int, long long>>& nn_expansion(int x) const {
        std::lock_guard<std::recursive_mutex> lock(memo_mu_);
        if (!nn_memo_[x]) {
            if (X.counts(x).N == 0) {
                nn_memo_[x] = {{x, 1}};
            } else {
                auto [xc, xa] = ptolemy_rewrite_N(x, first_with_label(x, 'N'));
                nn_memo_[x] = merge(nn_expansion(xc), nn_expansion(xa), -1);
            }
        }
        return *nn_memo_[x];
    }

    MacElement normalize_noncrossing(const MacElement& e) const {
        MacElement out;
        for (const auto& [x, c] : e)
            for (const auto& [b, k] : nc_expansion(x)) mac_add(out, b, c * (long)k);
        return out;
    }

    MacElement normalize_nonnesting(const MacElement& e) const {
        MacElement out;
        for (const auto& [x, c] : e)
            for (const auto& [b, k] : nn_expansion(x)) mac_add(out, b, c * (long)k);
        return out;
    }

    // One-rule-at-a-time rewriting used by the confluence tests. kind 'C'
    // eliminates crossings (noncrossing normal form); kind 'N' eliminates
    // nestings. With rng null the strategy is deterministic: lowest term id,
    // first reducible quadruple; otherwise the reducible (term, quadruple)
    // pair is chosen uniformly at random.
    MacElement normalize_stepwise(MacElement e, char kind, std::mt19937_64* rng) const {
        auto reducible_quads = [&](int x) {
            std::vector<int> out;
            const auto& qs = X.quads(x);
            for (size_t qi = 0; qi < qs.size(); ++qi)
                if (qs[qi].label == kind) out.push_back(int(qi));
            return out;
        };
        std::set<int> reducible;
        for (const auto& [x, c] : e)
            if (!reducible_quads(x).empty()) reducible.insert(x);
        while (!reducible.empty()) {
            int x;
            if (rng) {
                auto it = reducible.begin();
                std::advance(it, std::uniform_int_distribution<size_t>(
                                     0, reducible.size() - 1)(*rng));
                x = *it;
            } else {
                x = *reducible.begin();
            }
            auto qis = reducible_quads(x);
            int qi = rng ? qis[std::uniform_int_distribution<size_t>(0, qis.size() - 1)(*rng)]
                         : qis.front();
            Rat c = e.at(x);
            e.erase(x);
            reducible.erase(x);
            const auto& q = X.quads(x)[qi];
            std::pair<int, int> repl;
            Rat second_scale;
            if (kind == 'C') {
                repl = ptolemy_rewrite_C(x, q);
                second_scale = c;
            } else {
                repl = ptolemy_rewrite_N(x, q);
                second_scale = -c;
            }
            for (auto [y, cy] : {std::pair<int, Rat>{repl.first, c},
                                 std::pair<int, Rat>{repl.second, second_scale}}) {
                mac_add(e, y, cy);
                if (e.count(y) && !reducible_quads(y).empty()) reducible.insert(y);
                else reducible.erase(y);
            }
        }
        return e;
    }

    // W-action extended linearly; tracks the sign of each component product.
    MacElement act_element(std::span<const int> word, const MacElement& e) const {
        MacElement out;
        for (const auto& [x, c] : e) {
            auto [y, s] = X.act_word_signed(word, x);
            mac_add(out, y, s > 0 ? c : -c);
        }
        return out;
    }

    // s_i applied to a noncrossing basis element: -x when alpha_i divides x,
    // otherwise x + x' for another noncrossing x' divisible by alpha_i.
    MacElement simple_reflection_on_basis(int i, int x) const {
        if (nc_pos_[x] < 0) throw std::invalid_argument("element is not noncrossing");
        int ai = X.root_system().simple_id(i);
        MacElement out;
        if (X.has_component(x, ai)) {
            out[x] = -1;
            return out;
        }
        int y = X.act_simple(i, x);
        const auto& exp = nc_expansion(y);
        if (exp.size() != 2)
            throw std::logic_error("simple reflection image is not a two-term sum");
        int other = exp[0].first == x ? exp[1].first : exp[0].first;
        bool sees_x = exp[0].first == x || exp[1].first == x;
        if (!sees_x || exp[0].second != 1 || exp[1].second != 1 ||
            !X.has_component(other, ai))
            throw std::logic_error("simple reflection image has unexpected shape");
        out[x] = 1;
        out[other] = 1;
        return out;
    }

    // --- sigma-compatible orderings and the change of basis --------------

    // Class order: by (height of sigma, then lexicographic sigma). Distinct
    // classes have distinct sigma, so this is a total order refining the
    // dominance order on sums.
    std::vector<int> class_ordered(const std::vector<int>& ids) const {
        std::vector<int> out = ids;
        std::sort(out.begin(), out.end(), [&](int a, int b) {
            Coeffs sa = X.sigma(a), sb = X.sigma(b);
            int ha = sigma_height(sa), hb = sigma_height(sb);
            if (ha != hb) return ha < hb;
            return sa < sb;
        });
        return out;
    }

    struct ChangeOfBasis {
        std::vector<int> nonnesting_order;   // row i: nonnesting element id
        std::vector<int> noncrossing_order;  // col j: noncrossing element id
        std::vector<std::vector<long long>> matrix;   // nn in terms of nc
        std::vector<std::vector<long long>> inverse;  // nc in terms of nn
    };

    // Expresses the nonnesting basis in the noncrossing basis, rows and
    // columns paired up by sigma class in a sigma-compatible order. The
    // matrix is lower unitriangular with integer entries. A caller-supplied
    // row order must itself be sigma-compatible.
    ChangeOfBasis change_of_basis(
        const std::optional<std::vector<int>>& custom_nn_order = std::nullopt) const {
        ChangeOfBasis cob;
        cob.nonnesting_order = custom_nn_order ? *custom_nn_order : class_ordered(nonnesting_);
        if (custom_nn_order) validate_sigma_compatible(*custom_nn_order);
        // Pair each class's noncrossing element with its nonnesting element.
        std::map<Coeffs, int> nc_by_sigma;
        for (int b : noncrossing_) {
            if (!nc_by_sigma.emplace(X.sigma(b), b).second)
                throw std::logic_error("two noncrossing elements share a sum");
        }
        for (int r : cob.nonnesting_order) {
            auto it = nc_by_sigma.find(X.sigma(r));
            if (it == nc_by_sigma.end())
                throw std::logic_error("nonnesting class has no noncrossing partner");
            cob.noncrossing_order.push_back(it->second);
        }
        int d = dimension();
        std::vector<int> col_of(X.size(), -1);
        for (int j = 0; j < d; ++j) col_of[cob.noncrossing_order[j]] = j;
        cob.matrix.assign(d, std::vector<long long>(d, 0));
        for (int i = 0; i < d; ++i)
            for (const auto& [b, c] : nc_expansion(cob.nonnesting_order[i])) {
                if (col_of[b] < 0) throw std::logic_error("expansion outside the basis");
                cob.matrix[i][col_of[b]] = c;
            }
        for (int i = 0; i < d; ++i) {
            if (cob.matrix[i][i] != 1)
                throw std::logic_error("change of basis is not unidiagonal");
            for (int j = i + 1; j < d; ++j)
                if (cob.matrix[i][j] != 0)
                    throw std::logic_error("change of basis is not triangular");
        }
        // Integer inverse by forward substitution.
        cob.inverse.assign(d, std::vector<long long>(d, 0));
        for (int i = 0; i < d; ++i) {
            cob.inverse[i][i] = 1;
            for (int j = 0; j < i; ++j) {
                if (!cob.matrix[i][j]) continue;
                for (int t = 0; t <= j; ++t)
                    cob.inverse[i][t] -= cob.matrix[i][j] * cob.inverse[j][t];
            }
        }
        return cob;
    }

    void validate_sigma_compatible(const std::vector<int>& order) const {
        for (size_t j = 0; j < order.size(); ++j)
            for (size_t i = j + 1; i < order.size(); ++i) {
                // order[i] after order[j]: sigma(order[i]) must not be
                // strictly dominated by sigma(order[j]).
                Coeffs si = X.sigma(order[i]), sj = X.sigma(order[j]);
                bool leq = true, strict = false;
                for (size_t t = 0; t < si.size(); ++t) {
                    if (si[t] > sj[t]) leq = false;
                    if (si[t] < sj[t]) strict = true;
                }
                if (leq && strict)
                    throw std::invalid_argument("ordering is not sigma-compatible");
            }
    }

    // --- polynomial oracle ------------------------------------------------

    // Exact product of the component linear forms in the Euclidean
    // coordinates of the root system.
    Poly expand_poly(int x) const {
        Poly p = Poly::constant(1);
        for (uint16_t c : X.components(x)) p = p.times_linear(X.root_system().embedding(c));
        return p;
    }

    // Every n-root must expand with nonnegative integer coefficients into
    // the noncrossing basis.
    SweepReport sign_coherence_report() const {
        SweepReport rep{"sign-coherence"};
        for (int x = 0; x < X.size(); ++x) {
            ++rep.checked;
            for (const auto& [b, c] : nc_expansion(x))
                if (c < 0) rep.fail("x=" + std::to_string(x));
        }
        return rep;
    }

    long long theta_c_coefficient_sum() const {
        long long s = 0;
        for (const auto& [b, c] : nc_expansion(theta_C_)) s += c;
        return s;
    }

    // theta_C must dominate every n-root coefficientwise in the noncrossing
    // expansion.
    bool theta_c_dominates_all() const {
        std::vector<long long> top(X.size(), 0);
        for (const auto& [b, c] : nc_expansion(theta_C_)) top[b] = c;
        for (int x = 0; x < X.size(); ++x)
            for (const auto& [b, c] : nc_expansion(x))
                if (c > top[b]) return false;
        return true;
    }

private:
    const NRootSet::Quad& first_with_label(int x, char label) const {
        for (const auto& q : X.quads(x))
            if (q.label == label) return q;
        throw std::logic_error("no quadruple with requested label");
    }

    int substitute(int x, const std::array<uint16_t, 4>& from,
                   const std::array<uint16_t, 4>& to) const {
        Components next;
        next.reserve(X.rank());
        for (uint16_t c : X.components(x))
            if (std::find(from.begin(), from.end(), c) == from.end()) next.push_back(c);
        next.insert(next.end(), to.begin(), to.end());
        std::sort(next.begin(), next.end());
        int y = X.id_of(next);
        if (y < 0) throw std::logic_error("substituted quadruple is not orthogonal to the rest");
        return y;
    }

    static std::vector<std::pair<int, long long>> merge(
        const std::vector<std::pair<int, long long>>& a,
        const std::vector<std::pair<int, long long>>& b, long long bscale) {
        std::vector<std::pair<int, long long>> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.push_back({b[j].first, b[j].second * bscale});
                ++j;
            } else {
                long long c = a[i].second + b[j].second * bscale;
                if (c) out.push_back({a[i].first, c});
                ++i, ++j;
            }
        }
        return out;
    }

    const NRootSet& X;
    std::vector<int> noncrossing_, nonnesting_;
    std::vector<int> nc_pos_;
    int theta_C_ = -1;
    mutable std::recursive_mutex memo_mu_;
    mutable std::vector<std::optional<std::vector<std::pair<int, long long>>>> nc_memo_;
    mutable std::vector<std::optional<std::vector<std::pair<int, long long>>>> nn_memo_;
};

}  // namespace nroot

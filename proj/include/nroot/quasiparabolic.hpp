#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "nroot/bitset.hpp"
#include "nroot/nroot_set.hpp"

namespace nroot {

// The set X of positive n-roots as a scaled W-set: level function
// lambda = C + 2N, covering relations, reachability in the quasiparabolic
// order, the extremal elements theta_A / theta_C / theta_N, and the
// alignment-free subset X_I with its parity split.
class QPStructure {
public:
    explicit QPStructure(const NRootSet& x) : X(x) {
        find_extremals();
        build_covers();
        build_xi();
    }

    const NRootSet& nroots() const { return X; }
    int level(int x) const { return X.level(x); }

    int theta_A() const { return theta_A_; }
    int theta_C() const { return theta_C_; }
    int theta_N() const { return theta_N_; }

    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    bool leq(int a, int b) const { return down_[b].test(a); }
    const DynBitset& down_set(int x) const { return down_[x]; }
    const DynBitset& up_set(int x) const { return up_[x]; }

    // Interval [a, b] in the quasiparabolic order as a bitset.
    DynBitset interval(int a, int b) const { return up_[a] & down_[b]; }

    // --- alignment-free elements ----------------------------------------

    const std::vector<int>& xi_members() const { return xi_; }
    bool in_xi(int x) const { return X.counts(x).A == 0; }
    int alpha_x_index() const { return alpha_x_; }  // 1-based simple index
    const std::vector<int>& wi_simple_indices() const { return wi_simples_; }
    const std::vector<int>& xi_even() const { return xi_even_; }
    const std::vector<int>& xi_odd() const { return xi_odd_; }

    // --- axiom sweeps ----------------------------------------------------

    // |lambda(s x) - lambda(x)| <= 1 for every simple reflection s.
    SweepReport verify_scaled() const {
        SweepReport rep{"scaled"};
        for (int x = 0; x < X.size(); ++x)
            for (int i = 1; i <= X.rank(); ++i) {
                ++rep.checked;
                int y = X.act_simple(i, x);
                if (std::abs(level(y) - level(x)) > 1)
                    rep.fail("x=" + std::to_string(x) + " s=" + std::to_string(i));
            }
        return rep;
    }

    // (QP1) lambda(r x) = lambda(x) implies r x = x.
    SweepReport verify_qp1() const {
        SweepReport rep{"qp1"};
        int m = X.root_system().num_positive();
        for (int r = 0; r < m; ++r)
            for (int x = 0; x < X.size(); ++x) {
                ++rep.checked;
                int y = X.act_reflection(r, x);
                if (y != x && level(y) == level(x))
                    rep.fail("x=" + std::to_string(x) + " r=" + std::to_string(r));
            }
        return rep;
    }

    // (QP2) lambda(r x) > lambda(x) and lambda(s r x) < lambda(s x)
    // imply r x = s x.
    SweepReport verify_qp2() const {
        SweepReport rep{"qp2"};
        int m = X.root_system().num_positive();
        for (int r = 0; r < m; ++r)
            for (int x = 0; x < X.size(); ++x) {
                int rx = X.act_reflection(r, x);
                if (level(rx) <= level(x)) {
                    rep.checked += X.rank();
                    continue;
                }
                for (int i = 1; i <= X.rank(); ++i) {
                    ++rep.checked;
                    int sx = X.act_simple(i, x);
                    int srx = X.act_simple(i, rx);
                    if (level(srx) < level(sx) && rx != sx)
                        rep.fail("x=" + std::to_string(x) + " r=" + std::to_string(r) +
                                 " s=" + std::to_string(i));
                }
            }
        return rep;
    }

    // Classifies every reflection move by the label pair of the moved
    // quadruple and checks the level-change laws: AC and CN moves raise the
    // level by a positive odd amount, AN moves by a positive even amount,
    // the reverse moves lower it accordingly, and CN/NC moves preserve the
    // alignment count.
    SweepReport level_change_laws() const {
        SweepReport rep{"level-change-laws"};
        int m = X.root_system().num_positive();
        for (int r = 0; r < m; ++r)
            for (int x = 0; x < X.size(); ++x) {
                int y = X.act_reflection(r, x);
                if (y == x) continue;
                ++rep.checked;
                auto before = X.moved_quadruple(r, x);
                auto after = X.moved_quadruple(r, y);
                if (!before || !after) {
                    rep.fail("missing moved quadruple at x=" + std::to_string(x));
                    continue;
                }
                int d = level(y) - level(x);
                char a = before->label, b = after->label;
                bool ok = false;
                if (a == 'A' && b == 'C') ok = d > 0 && d % 2 == 1;
                else if (a == 'C' && b == 'N') ok = d > 0 && d % 2 == 1;
                else if (a == 'A' && b == 'N') ok = d > 0 && d % 2 == 0;
                else if (a == 'C' && b == 'A') ok = d < 0 && d % 2 != 0;
                else if (a == 'N' && b == 'C') ok = d < 0 && d % 2 != 0;
                else if (a == 'N' && b == 'A') ok = d < 0 && d % 2 == 0;
                if ((a == 'C' && b == 'N') || (a == 'N' && b == 'C'))
                    ok = ok && X.counts(x).A == X.counts(y).A;
                if (!ok)
                    rep.fail(std::string("move ") + a + b + " d=" + std::to_string(d) +
                             " at x=" + std::to_string(x) + " r=" + std::to_string(r));
            }
        return rep;
    }

    // X_I sanity: membership equals the sigma-fiber of sigma(theta_N),
    // theta_C is its unique minimal element, the level-parity classes have
    // equal sizes, and every reflection of W_I flips the parity.
    SweepReport verify_xi() const {
        SweepReport rep{"alignment-free"};
        Coeffs target = X.sigma(theta_N_);
        for (int x = 0; x < X.size(); ++x) {
            ++rep.checked;
            if (in_xi(x) != (X.sigma(x) == target))
                rep.fail("sigma fiber mismatch at x=" + std::to_string(x));
        }
        for (int x : xi_)
            if (level(x) == level(theta_C_) && x != theta_C_)
                rep.fail("minimal element of X_I is not unique");
        if (xi_even_.size() != xi_odd_.size()) rep.fail("parity classes differ in size");
        const RootSystem& rs = X.root_system();
        for (int r = 0; r < rs.num_positive(); ++r) {
            if (rs.root(r)[alpha_x_ - 1] != 0) continue;  // not a root of W_I
            for (int x : xi_) {
                ++rep.checked;
                if (X.has_component(x, r)) {
                    rep.fail("W_I root divides an element of X_I");
                    continue;
                }
                int y = X.act_reflection(r, x);
                if (!in_xi(y) || (level(y) - level(x)) % 2 == 0)
                    rep.fail("W_I reflection did not flip parity at x=" + std::to_string(x));
            }
        }
        return rep;
    }

    // Quasiparabolic-only characterizations of the three feature-avoiding
    // families: alignment-free means no reflection raises the level by an
    // even amount, nonnesting means none lowers it by an even amount, and
    // noncrossing means theta_N is reachable by reflections raising the
    // level by exactly 2 per step.
    SweepReport abstract_characterizations() const {
        SweepReport rep{"abstract-characterizations"};
        int m = X.root_system().num_positive();
        std::vector<char> raises_even(X.size(), 0), lowers_even(X.size(), 0);
        std::vector<std::vector<int>> step2_in(X.size());
        for (int r = 0; r < m; ++r)
            for (int x = 0; x < X.size(); ++x) {
                int y = X.act_reflection(r, x);
                int d = level(y) - level(x);
                if (d > 0 && d % 2 == 0) raises_even[x] = 1;
                if (d < 0 && d % 2 == 0) lowers_even[x] = 1;
                if (d == 2) step2_in[y].push_back(x);
            }
        std::vector<char> reaches(X.size(), 0);
        reaches[theta_N_] = 1;
        std::vector<int> stack{theta_N_};
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            for (int x : step2_in[y])
                if (!reaches[x]) {
                    reaches[x] = 1;
                    stack.push_back(x);
                }
        }
        for (int x = 0; x < X.size(); ++x) {
            rep.checked += 3;
            auto c = X.counts(x);
            if ((c.A == 0) != !raises_even[x])
                rep.fail("alignment-free mismatch at x=" + std::to_string(x));
            if ((c.N == 0) != !lowers_even[x])
                rep.fail("nonnesting mismatch at x=" + std::to_string(x));
            if ((c.C == 0) != bool(reaches[x]))
                rep.fail("noncrossing mismatch at x=" + std::to_string(x));
        }
        return rep;
    }

    // Type D: X_I with the quasiparabolic order is isomorphic to S_k under
    // the strong Bruhat order, via tau -> the n-root of the matching
    // {(i, tau(i)+k)}, with lambda = M + length(tau).
    SweepReport bruhat_iso_type_d() const {
        if (X.root_system().type().family != Family::D)
            throw std::invalid_argument("Bruhat isomorphism requires type D");
        SweepReport rep{"bruhat-iso"};
        int k = X.rank() / 2;
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::vector<int>> perms;
        do perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<int> image;
        std::vector<int> lengths;
        for (const auto& tau : perms) {
            std::vector<std::pair<int, int>> blocks;
            for (int i = 0; i < k; ++i) blocks.push_back({i + 1, tau[i] + 1 + k});
            image.push_back(X.from_matching(blocks));
            int inv = 0;
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) inv += tau[i] > tau[j];
            lengths.push_back(inv);
        }
        std::set<int> image_set(image.begin(), image.end());
        std::set<int> xi_set(xi_.begin(), xi_.end());
        ++rep.checked;
        if (image_set != xi_set) rep.fail("image of the map is not X_I");
        for (size_t t = 0; t < perms.size(); ++t) {
            ++rep.checked;
            if (level(image[t]) != X.M() + lengths[t])
                rep.fail("level formula fails at permutation " + std::to_string(t));
        }
        // Bruhat order on S_k via transitive closure of length-1 transposition
        // steps; compare against quasiparabolic reachability.
        int p = int(perms.size());
        std::map<std::vector<int>, int> pid;
        for (int t = 0; t < p; ++t) pid[perms[t]] = t;
        std::vector<DynBitset> bruhat_down(p, DynBitset(p));
        std::vector<int> by_len(p);
        std::iota(by_len.begin(), by_len.end(), 0);
        std::sort(by_len.begin(), by_len.end(),
                  [&](int a, int b) { return lengths[a] < lengths[b]; });
        for (int t : by_len) {  // topological: covers feed upward
            bruhat_down[t].set(t);
            auto tau = perms[t];
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) {
                    if (tau[i] >= tau[j]) continue;
                    auto up = tau;
                    std::swap(up[i], up[j]);
                    int u = pid[up];
                    if (lengths[u] == lengths[t] + 1) bruhat_down[u] |= bruhat_down[t];
                }
        }
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                ++rep.checked;
                if (bruhat_down[b].test(a) != leq(image[a], image[b]))
                    rep.fail("order mismatch at permutations " + std::to_string(a) + "," +
                             std::to_string(b));
            }
        return rep;
    }

private:
    void find_extremals() {
        theta_A_ = theta_C_ = theta_N_ = -1;
        for (int x = 0; x < X.size(); ++x) {
            auto c = X.counts(x);
            if (c.A == X.M()) assign_unique(theta_A_, x, "theta_A");
            if (c.C == X.M()) assign_unique(theta_C_, x, "theta_C");
            if (c.N == X.M()) assign_unique(theta_N_, x, "theta_N");
        }
        if (theta_A_ < 0 || theta_C_ < 0 || theta_N_ < 0)
            throw std::logic_error("missing extremal n-root");
    }

    static void assign_unique(int& slot, int x, const char* what) {
        if (slot >= 0) throw std::logic_error(std::string(what) + " is not unique");
        slot = x;
    }

    void build_covers() {
        int m = X.root_system().num_positive();
        std::set<std::pair<int, int>> cov;
        for (int r = 0; r < m; ++r)
            for (int x = 0; x < X.size(); ++x) {
                int y = X.act_reflection(r, x);
                if (level(y) == level(x) + 1) cov.insert({x, y});
            }
        covers_.assign(cov.begin(), cov.end());

        std::vector<std::vector<int>> in(X.size()), out(X.size());
        for (auto [a, b] : covers_) {
            in[b].push_back(a);
            out[a].push_back(b);
        }
        std::vector<int> by_level(X.size());
        std::iota(by_level.begin(), by_level.end(), 0);
        std::stable_sort(by_level.begin(), by_level.end(),
                         [&](int a, int b) { return level(a) < level(b); });
        down_.assign(X.size(), DynBitset(X.size()));
        for (int x : by_level) {
            down_[x].set(x);
            for (int a : in[x]) down_[x] |= down_[a];
        }
        up_.assign(X.size(), DynBitset(X.size()));
        for (auto it = by_level.rbegin(); it != by_level.rend(); ++it) {
            up_[*it].set(*it);
            for (int b : out[*it]) up_[*it] |= up_[b];
        }
    }

    void build_xi() {
        for (int x = 0; x < X.size(); ++x)
            if (in_xi(x)) {
                xi_.push_back(x);
                (level(x) % 2 == 0 ? xi_even_ : xi_odd_).push_back(x);
            }
        alpha_x_ = -1;
        for (uint16_t c : X.components(theta_N_))
            if (X.root_system().height(c) == 1) {
                if (alpha_x_ >= 0) throw std::logic_error("theta_N has two simple components");
                const Coeffs& v = X.root_system().root(c);
                for (int i = 0; i < X.rank(); ++i)
                    if (v[i]) alpha_x_ = i + 1;
            }
        if (alpha_x_ < 0) throw std::logic_error("theta_N has no simple component");
        for (int i = 1; i <= X.rank(); ++i)
            if (i != alpha_x_) wi_simples_.push_back(i);
    }

    const NRootSet& X;
    int theta_A_ = -1, theta_C_ = -1, theta_N_ = -1;
    std::vector<std::pair<int, int>> covers_;
    std::vector<DynBitset> down_, up_;
    std::vector<int> xi_, xi_even_, xi_odd_;
    int alpha_x_ = -1;
    std::vector<int> wi_simples_;
};

}  // namespace nroot

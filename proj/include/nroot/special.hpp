#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nroot/macdonald.hpp"
#include "nroot/qpoly.hpp"
#include "nroot/quasiparabolic.hpp"

namespace nroot {

// Component sums and sigma-equivalence classes, the nonnesting element w_N
// with its heap lattice, Coxeter orbits, and cyclic sieving.
class SpecialEngine {
public:
    struct SigmaClass {
        Coeffs sigma;
        std::vector<int> members;  // ascending ids
        int nonnesting = -1;
        int noncrossing = -1;
    };

    SpecialEngine(const QPStructure& qp, const MacEngine& mac)
        : qp_(qp), mac_(mac), X(qp.nroots()) {
        build_classes();
    }

    const std::vector<SigmaClass>& sigma_classes() const { return classes_; }
    int class_of(int x) const { return class_of_[x]; }

    // Unique nonnesting and noncrossing member per class, the interval
    // property, class count = dimension, and X_I as the top class.
    SweepReport verify_sigma_classes() const {
        SweepReport rep{"sigma-classes"};
        ++rep.checked;
        if (int(classes_.size()) != mac_.dimension())
            rep.fail("class count differs from the dimension");
        for (size_t ci = 0; ci < classes_.size(); ++ci) {
            const auto& cl = classes_[ci];
            ++rep.checked;
            if (cl.nonnesting < 0 || cl.noncrossing < 0) {
                rep.fail("class " + std::to_string(ci) + " missing an extreme member");
                continue;
            }
            DynBitset ival = qp_.interval(cl.nonnesting, cl.noncrossing);
            DynBitset mem(X.size());
            for (int x : cl.members) mem.set(x);
            if (!(ival == mem)) rep.fail("class " + std::to_string(ci) + " is not an interval");
        }
        // The alignment-free elements form the sigma-maximal class.
        const SigmaClass& top = classes_.back();
        std::vector<int> xi = qp_.xi_members();
        ++rep.checked;
        if (top.members != xi || top.nonnesting != qp_.theta_C() ||
            top.noncrossing != qp_.theta_N())
            rep.fail("top class is not [theta_C, theta_N]");
        for (const auto& cl : classes_) {
            ++rep.checked;
            bool leq = true;
            for (size_t t = 0; t < cl.sigma.size(); ++t)
                if (cl.sigma[t] > top.sigma[t]) leq = false;
            if (!leq) rep.fail("a class is not below the alignment-free class");
        }
        return rep;
    }

    // --- Poincare series ---------------------------------------------------

    QPoly level_polynomial(const std::vector<int>& ids) const {
        int top = 0;
        for (int x : ids) top = std::max(top, qp_.level(x));
        std::vector<long long> c(top + 1, 0);
        for (int x : ids) c[qp_.level(x)]++;
        return QPoly(std::move(c));
    }

    QPoly poincare_X() const {
        std::vector<int> all(X.size());
        std::iota(all.begin(), all.end(), 0);
        return level_polynomial(all);
    }

    QPoly poincare_XI() const { return level_polynomial(qp_.xi_members()); }

    static QPoly closed_form_ps_x(SystemType st) {
        std::vector<int> ds;
        if (st.family == Family::D)
            for (int i = 2; i <= st.rank / 2; ++i) ds.push_back(2 * i - 1);
        else if (st.family == Family::E7) ds = {3, 5, 9};
        else ds = {3, 5, 9, 15};
        return product_of_quantum(ds);
    }

    static QPoly closed_form_ps_xi(SystemType st, int M) {
        std::vector<int> ds;
        if (st.family == Family::D)
            for (int i = 2; i <= st.rank / 2; ++i) ds.push_back(i);
        else if (st.family == Family::E7) ds = {2, 3, 5};
        else ds = {2, 3, 5, 8};
        return QPoly::monomial(M) * product_of_quantum(ds);
    }

    struct ClassFactorization {
        int shift = 0;            // min level in the class
        std::vector<int> ds;      // PS = prod_d q^{d-1}[d]_q
        bool ok = false;
    };

    // Each class polynomial must factor as prod_{d in D} q^{d-1} [d]_q; in
    // particular the minimal level equals sum (d-1).
    ClassFactorization factor_class_poly(const QPoly& ps) const {
        ClassFactorization out;
        out.shift = ps.low_degree();
        auto f = ps.divided_by(QPoly::monomial(out.shift));
        if (!f) return out;
        auto ds = quantum_factorization(*f);
        if (!ds) return out;
        int shift_sum = 0;
        for (int d : *ds) shift_sum += d - 1;
        if (shift_sum != out.shift) return out;
        out.ds = *ds;
        out.ok = true;
        return out;
    }

    SweepReport verify_class_factorizations() const {
        SweepReport rep{"class-poincare"};
        for (size_t ci = 0; ci < classes_.size(); ++ci) {
            ++rep.checked;
            if (!factor_class_poly(level_polynomial(classes_[ci].members)).ok)
                rep.fail("class " + std::to_string(ci) + " does not factor");
        }
        return rep;
    }

    // --- Mobius function and the Eulerian-interval law ---------------------

    // Pairs a <_Q b where mu(a, b) != (-1)^(lambda(b) - lambda(a)),
    // recorded as bitset rows over b for each a.
    const std::vector<DynBitset>& non_eulerian_pairs() const {
        if (bad_up_.empty()) {
            bad_up_.assign(X.size(), DynBitset(X.size()));
            std::vector<int> by_level(X.size());
            std::iota(by_level.begin(), by_level.end(), 0);
            std::stable_sort(by_level.begin(), by_level.end(),
                             [&](int a, int b) { return qp_.level(a) < qp_.level(b); });
            std::vector<long long> mu(X.size());
            for (int a = 0; a < X.size(); ++a) {
                const DynBitset& up = qp_.up_set(a);
                for (int b : by_level) {
                    if (!up.test(b)) continue;
                    if (b == a) {
                        mu[b] = 1;
                        continue;
                    }
                    long long s = 0;
                    DynBitset mid = up & qp_.down_set(b);
                    mid.for_each([&](int w) {
                        if (w != b) s += mu[w];
                    });
                    mu[b] = -s;
                    int sign = (qp_.level(b) - qp_.level(a)) % 2 ? -1 : 1;
                    if (mu[b] != sign) bad_up_[a].set(b);
                }
            }
        }
        return bad_up_;
    }

    bool interval_eulerian(const DynBitset& interval) const {
        const auto& bad = non_eulerian_pairs();
        bool ok = true;
        interval.for_each([&](int a) {
            if (ok && bad[a].intersection_count(interval) > 0) ok = false;
        });
        return ok;
    }

    // Direct Mobius computation restricted to one interval's members.
    // Assumes the members form an interval of the quasiparabolic order.
    bool interval_eulerian_direct(std::vector<int> members) const {
        std::stable_sort(members.begin(), members.end(),
                         [&](int a, int b) { return qp_.level(a) < qp_.level(b); });
        int m = int(members.size());
        std::vector<long long> mu(m);
        for (int ai = 0; ai < m; ++ai) {
            for (int bi = ai; bi < m; ++bi) {
                if (!qp_.leq(members[ai], members[bi])) {
                    mu[bi] = 0;
                    continue;
                }
                if (bi == ai) {
                    mu[bi] = 1;
                    continue;
                }
                long long s = 0;
                for (int wi = ai; wi < bi; ++wi)
                    if (qp_.leq(members[wi], members[bi])) s += mu[wi];
                mu[bi] = -s;
                int sign = (qp_.level(members[bi]) - qp_.level(members[ai])) % 2 ? -1 : 1;
                if (mu[bi] != sign) return false;
            }
        }
        return true;
    }

    SweepReport verify_eulerian_classes() const {
        SweepReport rep{"eulerian-classes"};
        for (size_t ci = 0; ci < classes_.size(); ++ci) {
            ++rep.checked;
            if (!interval_eulerian_direct(classes_[ci].members))
                rep.fail("class " + std::to_string(ci) + " is not Eulerian");
        }
        return rep;
    }

    // For every pair (x nonnesting, y noncrossing, x <=_Q y), the interval
    // [x, y] is Eulerian exactly when it is a sigma class.
    SweepReport verify_eulerian_equivalence() const {
        SweepReport rep{"eulerian-equivalence"};
        for (int x : mac_.nonnesting_basis())
            for (int y : mac_.noncrossing_basis()) {
                if (!qp_.leq(x, y)) continue;
                ++rep.checked;
                bool is_class = X.sigma(x) == X.sigma(y);
                if (interval_eulerian(qp_.interval(x, y)) != is_class)
                    rep.fail("pair (" + std::to_string(x) + "," + std::to_string(y) + ")");
            }
        return rep;
    }

    // The two class projections are order preserving.
    SweepReport verify_congruence() const {
        SweepReport rep{"poset-congruence"};
        for (auto [a, b] : qp_.covers()) {
            ++rep.checked;
            const auto& ca = classes_[class_of_[a]];
            const auto& cb = classes_[class_of_[b]];
            if (!qp_.leq(ca.nonnesting, cb.nonnesting) ||
                !qp_.leq(ca.noncrossing, cb.noncrossing))
                rep.fail("cover (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
        return rep;
    }

    // --- the nonnesting element w_N ----------------------------------------

    // Builds a nonnesting sequence from theta_A to theta_C by repeatedly
    // applying a simple reflection whose root pairs negatively with the
    // running component sum. The recorded letters, taken as a word whose
    // rightmost letter acts first, give w_N: act_word(word, theta_C) =
    // theta_A and the length is M.
    std::vector<int> nonnesting_word(std::mt19937_64* rng = nullptr) const {
        const RootSystem& rs = X.root_system();
        int cur = qp_.theta_A();
        std::vector<int> word;
        while (true) {
            Coeffs sum = X.sigma(cur);
            std::vector<int> admissible;
            for (int i = 1; i <= X.rank(); ++i)
                if (rs.bilinear(sum, rs.simple(i)) < 0) admissible.push_back(i);
            if (admissible.empty()) break;
            int i = rng ? admissible[std::uniform_int_distribution<size_t>(
                              0, admissible.size() - 1)(*rng)]
                        : admissible.front();
            word.push_back(i);
            cur = X.act_simple(i, cur);
            if (X.counts(cur).N != 0)
                throw std::logic_error("nonnesting sequence left the nonnesting set");
        }
        if (cur != qp_.theta_C())
            throw std::logic_error("nonnesting sequence did not reach theta_C");
        if (int(word.size()) != X.M())
            throw std::logic_error("nonnesting word length differs from M");
        return word;
    }

    // Lattice-level action matrix of a word, for comparing group elements.
    std::vector<Coeffs> word_matrix(std::span<const int> word) const {
        const RootSystem& rs = X.root_system();
        std::vector<Coeffs> cols;
        for (int i = 1; i <= X.rank(); ++i) cols.push_back(rs.act_word(word, rs.simple(i)));
        return cols;
    }

    // Enumerates the commutation class of a word; a word is rejected as not
    // fully commutative when some member of the class contains a factor
    // s_i s_j s_i with i, j adjacent.
    bool word_fully_commutative(const std::vector<int>& word) const {
        const auto& gram = X.root_system().gram();
        std::set<std::vector<int>> seen{word};
        std::vector<std::vector<int>> stack{word};
        while (!stack.empty()) {
            std::vector<int> w = std::move(stack.back());
            stack.pop_back();
            for (size_t j = 0; j + 2 < w.size() + 0u; ++j)
                if (w[j] == w[j + 2] && gram[w[j] - 1][w[j + 1] - 1] == -1) return false;
            for (size_t j = 0; j + 1 < w.size(); ++j) {
                if (w[j] == w[j + 1]) return false;  // not even reduced
                if (gram[w[j] - 1][w[j + 1] - 1] == 0) {
                    std::vector<int> w2 = w;
                    std::swap(w2[j], w2[j + 1]);
                    if (seen.insert(w2).second) stack.push_back(w2);
                }
            }
        }
        return true;
    }

    bool words_commutation_equivalent(const std::vector<int>& a,
                                      const std::vector<int>& b) const {
        if (a.size() != b.size()) return false;
        const auto& gram = X.root_system().gram();
        std::set<std::vector<int>> seen{a};
        std::vector<std::vector<int>> stack{a};
        while (!stack.empty()) {
            std::vector<int> w = std::move(stack.back());
            stack.pop_back();
            if (w == b) return true;
            for (size_t j = 0; j + 1 < w.size(); ++j)
                if (w[j] != w[j + 1] && gram[w[j] - 1][w[j + 1] - 1] == 0) {
                    std::vector<int> w2 = w;
                    std::swap(w2[j], w2[j + 1]);
                    if (seen.insert(w2).second) stack.push_back(w2);
                }
        }
        return false;
    }

    // --- heap of w_N and the nonnesting lattice ----------------------------

    struct HeapLattice {
        std::vector<int> word;          // letters of w_N, leftmost first
        std::vector<uint32_t> filters;  // order filters as position masks
        std::vector<int> images;        // filter -> n-root id, parallel
    };

    // Order filters of the heap of w_N. Positions a < b are comparable when
    // their letters are equal or adjacent in the Dynkin diagram; a filter
    // selects a suffix of some reduced word, i.e. an element v <=_L w_N,
    // and is mapped to v(theta_C). The image must enumerate the nonnesting
    // set without repetition.
    HeapLattice heap_lattice() const {
        HeapLattice h;
        h.word = nonnesting_word();
        int m = int(h.word.size());
        const auto& gram = X.root_system().gram();
        std::vector<std::pair<int, int>> prec;  // a before b, noncommuting
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                if (h.word[a] == h.word[b] || gram[h.word[a] - 1][h.word[b] - 1] == -1)
                    prec.push_back({a, b});
        for (uint32_t mask = 0; mask < (1u << m); ++mask) {
            bool filter = true;
            for (auto [a, b] : prec)
                if ((mask >> a & 1) && !(mask >> b & 1)) {
                    filter = false;
                    break;
                }
            if (!filter) continue;
            std::vector<int> sub;
            for (int p = 0; p < m; ++p)
                if (mask >> p & 1) sub.push_back(h.word[p]);
            h.filters.push_back(mask);
            h.images.push_back(X.act_word(sub, qp_.theta_C()));
        }
        return h;
    }

    SweepReport verify_heap_lattice(const HeapLattice& h) const {
        SweepReport rep{"heap-lattice"};
        ++rep.checked;
        if (int(h.filters.size()) != mac_.dimension())
            rep.fail("filter count differs from the dimension");
        std::set<int> image(h.images.begin(), h.images.end());
        ++rep.checked;
        if (image.size() != h.images.size()) rep.fail("filter images repeat");
        std::set<int> nn(mac_.nonnesting_basis().begin(), mac_.nonnesting_basis().end());
        ++rep.checked;
        if (image != nn) rep.fail("filter images are not the nonnesting set");
        std::set<uint32_t> fs(h.filters.begin(), h.filters.end());
        for (uint32_t a : h.filters)
            for (uint32_t b : h.filters) {
                ++rep.checked;
                if (!fs.count(a | b) || !fs.count(a & b))
                    rep.fail("filters not closed under union/intersection");
            }
        return rep;
    }

    // --- Coxeter orbits and cyclic sieving ---------------------------------

    struct OrbitResult {
        std::vector<int> orbit;
        bool full_coverage = false;  // each positive root once as a component
    };

    OrbitResult coxeter_orbit(std::span<const int> cox_word, int seed) const {
        OrbitResult res;
        int x = seed;
        do {
            res.orbit.push_back(x);
            x = X.act_word(cox_word, x);
        } while (x != seed);
        std::vector<int> hits(X.root_system().num_positive(), 0);
        for (int y : res.orbit)
            for (uint16_t c : X.components(y)) hits[c]++;
        res.full_coverage = std::all_of(hits.begin(), hits.end(),
                                        [](int h) { return h == 1; });
        return res;
    }

    std::optional<int> find_covering_seed(std::span<const int> cox_word) const {
        for (int seed = 0; seed < X.size(); ++seed)
            if (coxeter_orbit(cox_word, seed).full_coverage) return seed;
        return std::nullopt;
    }

    // Fixed points of c^d against |PS_X| at the corresponding root of unity,
    // for d = 0 .. h/2 - 1; nonidentity powers must be fixed-point free.
    SweepReport cyclic_sieving(std::span<const int> cox_word, double tol = 1e-6) const {
        SweepReport rep{"cyclic-sieving"};
        int m = X.root_system().type().coxeter_number() / 2;
        QPoly ps = poincare_X();
        std::vector<int> perm(X.size());
        for (int x = 0; x < X.size(); ++x) perm[x] = X.act_word(cox_word, x);
        std::vector<int> power(X.size());
        std::iota(power.begin(), power.end(), 0);
        for (int d = 0; d < m; ++d) {
            ++rep.checked;
            long long fix = 0;
            for (int x = 0; x < X.size(); ++x) fix += power[x] == x;
            std::complex<double> zeta =
                std::polar(1.0, 2.0 * std::numbers::pi * double(d) / double(m));
            double expected = std::abs(ps.eval(zeta));
            if (std::abs(expected - double(fix)) > tol)
                rep.fail("power " + std::to_string(d) + ": fix=" + std::to_string(fix) +
                         " ps=" + std::to_string(expected));
            if (d != 0 && fix != 0) rep.fail("power " + std::to_string(d) + " has fixed points");
            for (int x = 0; x < X.size(); ++x) power[x] = perm[power[x]];
        }
        ++rep.checked;
        bool identity = true;
        for (int x = 0; x < X.size(); ++x) identity = identity && power[x] == x;
        if (!identity) rep.fail("c^(h/2) does not act trivially");
        return rep;
    }

private:
    void build_classes() {
        std::map<Coeffs, std::vector<int>> by_sigma;
        for (int x = 0; x < X.size(); ++x) by_sigma[X.sigma(x)].push_back(x);
        for (auto& [sig, members] : by_sigma) {
            SigmaClass cl;
            cl.sigma = sig;
            cl.members = members;
            for (int x : members) {
                auto c = X.counts(x);
                if (c.N == 0) {
                    if (cl.nonnesting >= 0)
                        throw std::logic_error("two nonnesting elements in one class");
                    cl.nonnesting = x;
                }
                if (c.C == 0) {
                    if (cl.noncrossing >= 0)
                        throw std::logic_error("two noncrossing elements in one class");
                    cl.noncrossing = x;
                }
            }
            classes_.push_back(std::move(cl));
        }
        std::sort(classes_.begin(), classes_.end(), [](const SigmaClass& a, const SigmaClass& b) {
            int ha = sigma_height(a.sigma), hb = sigma_height(b.sigma);
            if (ha != hb) return ha < hb;
            return a.sigma < b.sigma;
        });
        class_of_.assign(X.size(), -1);
        for (size_t ci = 0; ci < classes_.size(); ++ci)
            for (int x : classes_[ci].members) class_of_[x] = int(ci);
    }

    const QPStructure& qp_;
    const MacEngine& mac_;
    const NRootSet& X;
    std::vector<SigmaClass> classes_;
    std::vector<int> class_of_;
    mutable std::vector<DynBitset> bad_up_;
};

}  // namespace nroot

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nroot/exceptional.hpp"
#include "nroot/fixtures.hpp"
#include "nroot/json_io.hpp"
#include "nroot/macdonald.hpp"
#include "nroot/nroot_set.hpp"
#include "nroot/poly.hpp"
#include "nroot/quasiparabolic.hpp"
#include "nroot/special.hpp"

namespace nroot {

struct CheckResult {
    std::string name;
    std::string type;
    std::string params;
    bool pass = false;
    std::string expected;
    std::string actual;
    double elapsed_ms = 0;
};

struct VerifyOptions {
    bool full = false;
    int workers = 1;
    unsigned long long seed = 20250809;
    int confluence_trials = 100;
};

// Everything derived from one root system, built once and shared.
struct Ctx {
    RootSystem rs;
    NRootSet X;
    QPStructure qp;
    MacEngine mac;
    SpecialEngine sp;

    Ctx(SystemType st, int workers)
        : rs(st), X(rs, workers), qp(X), mac(X), sp(qp, mac) {}
};

inline Ctx& context(SystemType st, int workers = 1) {
    static std::map<std::string, std::unique_ptr<Ctx>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[st.name()];
    if (!slot) slot = std::make_unique<Ctx>(st, workers);
    return *slot;
}

namespace detail {

class CheckRunner {
public:
    CheckRunner(const std::string& type, const std::set<std::string>& only)
        : type_(type), only_(only) {}

    using Outcome = std::pair<std::string, std::string>;  // expected, actual

    void add(const std::string& name, const std::string& params,
             const std::function<Outcome()>& fn) {
        if (!only_.empty() && !only_.count(name)) return;
        CheckResult r;
        r.name = name;
        r.type = type_;
        r.params = params;
        auto t0 = std::chrono::steady_clock::now();
        try {
            auto [exp, act] = fn();
            r.expected = exp;
            r.actual = act;
            r.pass = exp == act;
        } catch (const std::exception& e) {
            r.expected = "no exception";
            r.actual = std::string("exception: ") + e.what();
            r.pass = false;
        }
        r.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        results_.push_back(std::move(r));
    }

    static Outcome sweep(const SweepReport& rep) {
        std::string exp = "0 violations";
        if (rep.pass()) return {exp, exp};
        return {exp, std::to_string(rep.violations) + " violations of " +
                         std::to_string(rep.checked) + "; first: " + rep.first_witness};
    }

    static Outcome value(long long expected, long long actual) {
        return {std::to_string(expected), std::to_string(actual)};
    }

    static Outcome boolean(bool ok, const std::string& why_not = "failed") {
        return {std::string("ok"), ok ? std::string("ok") : why_not};
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    std::string type_;
    std::set<std::string> only_;
    std::vector<CheckResult> results_;
};

inline MacElement random_element(const NRootSet& X, std::mt19937_64& rng) {
    MacElement e;
    std::uniform_int_distribution<int> nterms(3, 6);
    std::uniform_int_distribution<int> pick(0, X.size() - 1);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        int n = num(rng);
        if (!n) n = 1;
        mac_add(e, pick(rng), make_rat(n, den(rng)));
    }
    return e;
}

inline std::vector<int> random_word(const NRootSet& X, std::mt19937_64& rng, int len) {
    std::uniform_int_distribution<int> letter(1, X.rank());
    std::vector<int> w(len);
    for (int& l : w) l = letter(rng);
    return w;
}

}  // namespace detail

// Runs the named checks (all when `only` is empty) for one type and returns
// one record per check. Heavy E8 checks (polynomial oracle, the Eulerian
// interval equivalence, cyclic sieving) run only with opt.full.
inline std::vector<CheckResult> run_checks(SystemType st, const VerifyOptions& opt,
                                           const std::set<std::string>& only = {}) {
    using R = detail::CheckRunner;
    detail::CheckRunner run(st.name(), only);
    Ctx& c = context(st, opt.workers);
    const RootSystem& rs = c.rs;
    const NRootSet& X = c.X;
    const QPStructure& qp = c.qp;
    const MacEngine& mac = c.mac;
    const SpecialEngine& sp = c.sp;
    bool skip_heavy = st.family == Family::E8 && !opt.full;
    int n = rs.rank();
    int k = st.family == Family::D ? n / 2 : 0;

    // --- root system ------------------------------------------------------
    run.add("root-count", "", [&] {
        return R::value(fixtures::positive_root_count(st), rs.num_positive());
    });
    run.add("highest-root-height", "h-1", [&] {
        return R::value(st.coxeter_number() - 1, rs.height(rs.highest()));
    });
    run.add("embedding-consistency", "scaled dot products", [&] {
        SweepReport rep{"embedding"};
        for (int a = 0; a < rs.num_positive(); ++a)
            for (int b = 0; b < rs.num_positive(); ++b) {
                ++rep.checked;
                long long d = RootSystem::dot(rs.embedding(a), rs.embedding(b));
                if (d != (long long)rs.embed_scale() *
                             rs.bilinear(rs.root(a), rs.root(b)))
                    rep.fail("pair " + std::to_string(a) + "," + std::to_string(b));
            }
        return R::sweep(rep);
    });
    run.add("root-downward-connectivity", "", [&] {
        SweepReport rep{"downward"};
        for (int a = 0; a < rs.num_positive(); ++a) {
            if (rs.height(a) == 1) continue;
            ++rep.checked;
            bool found = false;
            for (int i = 1; i <= n; ++i)
                if (rs.bilinear(rs.root(a), rs.simple(i)) == 1) found = true;
            if (!found) rep.fail("root " + std::to_string(a));
        }
        return R::sweep(rep);
    });

    // --- n-roots ------------------------------------------------------------
    run.add("nroot-count", "", [&] {
        return R::value(fixtures::nroot_count(st), X.size());
    });
    run.add("nroot-maximality", "no-extension test", [&] {
        SweepReport rep{"maximality"};
        for (int x = 0; x < X.size(); ++x) {
            ++rep.checked;
            DynBitset ext(rs.num_positive());
            ext.set_all();
            for (uint16_t comp : X.components(x)) ext &= rs.orth_row(comp);
            if (ext.any()) rep.fail("x=" + std::to_string(x) + " extends");
        }
        return R::sweep(rep);
    });
    run.add("quad-count", "A+C+N = M", [&] {
        SweepReport rep{"mcount"};
        for (int x = 0; x < X.size(); ++x) {
            ++rep.checked;
            auto cnt = X.counts(x);
            if (cnt.A + cnt.C + cnt.N != fixtures::quad_count(st))
                rep.fail("x=" + std::to_string(x));
        }
        return R::sweep(rep);
    });
    run.add("height-square-sum", "constant over X", [&] {
        auto sq = [&](int x) {
            long long s = 0;
            for (uint16_t comp : X.components(x)) {
                long long h = rs.height(comp);
                s += h * h;
            }
            return s;
        };
        SweepReport rep{"squaresum"};
        long long expect = sq(qp.theta_A());
        for (int x = 0; x < X.size(); ++x) {
            ++rep.checked;
            if (sq(x) != expect) rep.fail("x=" + std::to_string(x));
        }
        return R::sweep(rep);
    });
    run.add("classification-agreement", "heights vs D4 subsystem", [&] {
        SweepReport rep{"classify"};
        for (int x = 0; x < X.size(); ++x)
            for (const auto& q : X.quads(x)) {
                ++rep.checked;
                if (q.label != X.classify_oracle(q.members))
                    rep.fail("x=" + std::to_string(x));
            }
        return R::sweep(rep);
    });
    run.add("quad-overlaps", "sizes 0/2/4, symmetric difference coplanar", [&] {
        SweepReport rep{"overlap"};
        for (int x = 0; x < X.size(); ++x) {
            const auto& qs = X.quads(x);
            for (size_t i = 0; i < qs.size(); ++i)
                for (size_t j = i + 1; j < qs.size(); ++j) {
                    ++rep.checked;
                    std::vector<uint16_t> inter, sym;
                    std::set_intersection(qs[i].members.begin(), qs[i].members.end(),
                                          qs[j].members.begin(), qs[j].members.end(),
                                          std::back_inserter(inter));
                    if (inter.size() != 0 && inter.size() != 2 && inter.size() != 4) {
                        rep.fail("x=" + std::to_string(x) + " overlap " +
                                 std::to_string(inter.size()));
                        continue;
                    }
                    if (inter.size() != 2) continue;
                    std::set_symmetric_difference(
                        qs[i].members.begin(), qs[i].members.end(), qs[j].members.begin(),
                        qs[j].members.end(), std::back_inserter(sym));
                    Coeffs sum(n, 0);
                    for (uint16_t comp : sym)
                        for (int t = 0; t < n; ++t) sum[t] += rs.root(comp)[t];
                    bool even = true;
                    for (int v : sum) even = even && v % 2 == 0;
                    if (!even) {
                        rep.fail("x=" + std::to_string(x) + " symdiff not coplanar");
                        continue;
                    }
                    for (int& v : sum) v /= 2;
                    if (rs.root_id(sum) < 0)
                        rep.fail("x=" + std::to_string(x) + " symdiff not coplanar");
                }
        }
        return R::sweep(rep);
    });
    if (st.family == Family::E8)
        run.add("triple-completion", "unique fourth root in every 8-root", [&] {
            SweepReport rep{"e8-triples"};
            for (int x = 0; x < X.size(); ++x) {
                const auto& comps = X.components(x);
                for_each_subset(n, 3, [&](const std::vector<int>& idx) {
                    ++rep.checked;
                    int hits = 0;
                    for (const auto& q : X.quads(x)) {
                        int in = 0;
                        for (uint16_t m : q.members)
                            in += m == comps[idx[0]] || m == comps[idx[1]] ||
                                  m == comps[idx[2]];
                        if (in == 3) ++hits;
                    }
                    if (hits != 1) rep.fail("x=" + std::to_string(x));
                });
            }
            return R::sweep(rep);
        });
    run.add("action-group-law", "random words", [&] {
        std::mt19937_64 rng(opt.seed + 1);
        SweepReport rep{"group-law"};
        std::uniform_int_distribution<int> pick(0, X.size() - 1);
        for (int t = 0; t < 200; ++t) {
            ++rep.checked;
            auto w1 = detail::random_word(X, rng, 4);
            auto w2 = detail::random_word(X, rng, 4);
            int x = pick(rng);
            auto w12 = w1;
            w12.insert(w12.end(), w2.begin(), w2.end());
            int inner = X.act_word(w2, x);
            if (X.act_word(w12, x) != X.act_word(w1, inner))
                rep.fail("trial " + std::to_string(t));
        }
        return R::sweep(rep);
    });
    run.add("reflection-invariance", "B preserved on random triples", [&] {
        std::mt19937_64 rng(opt.seed + 2);
        SweepReport rep{"b-invariance"};
        std::uniform_int_distribution<int> pick(0, rs.num_positive() - 1);
        for (int t = 0; t < 500; ++t) {
            ++rep.checked;
            int a = pick(rng), b = pick(rng), m = pick(rng);
            Coeffs ra = rs.reflect(rs.root(m), rs.root(a));
            Coeffs rb = rs.reflect(rs.root(m), rs.root(b));
            if (rs.bilinear(ra, rb) != rs.bilinear_ids(a, b)) rep.fail("trial");
        }
        return R::sweep(rep);
    });

    // --- quasiparabolic structure ------------------------------------------
    run.add("scaled-set", "", [&] { return R::sweep(qp.verify_scaled()); });
    run.add("qp1", "", [&] { return R::sweep(qp.verify_qp1()); });
    run.add("qp2", "", [&] { return R::sweep(qp.verify_qp2()); });
    run.add("level-change-laws", "", [&] { return R::sweep(qp.level_change_laws()); });
    run.add("extremal-elements", "unique A^M, C^M, N^M", [&] {
        SweepReport rep{"extremal"};
        rep.checked = 3;
        auto ca = X.counts(qp.theta_A()), cc = X.counts(qp.theta_C()),
             cn = X.counts(qp.theta_N());
        if (ca.A != X.M() || cc.C != X.M() || cn.N != X.M()) rep.fail("wrong type");
        if (st.family == Family::D) {
            if (X.from_matching(fixtures::theta_a_matching(n)) != qp.theta_A())
                rep.fail("theta_A matching");
            if (X.from_matching(fixtures::theta_c_matching(n)) != qp.theta_C())
                rep.fail("theta_C matching");
            if (X.from_matching(fixtures::theta_n_matching(n)) != qp.theta_N())
                rep.fail("theta_N matching");
        } else {
            auto as_ids = [&](const std::vector<Coeffs>& vecs) {
                Components comps;
                for (const auto& v : vecs) {
                    int id = rs.root_id(v);
                    if (id < 0) throw std::logic_error("fixture is not a root");
                    comps.push_back(uint16_t(id));
                }
                std::sort(comps.begin(), comps.end());
                return comps;
            };
            auto fa = st.family == Family::E7 ? fixtures::e7_theta_a() : fixtures::e8_theta_a();
            auto fc = st.family == Family::E7 ? fixtures::e7_theta_c() : fixtures::e8_theta_c();
            auto fn = st.family == Family::E7 ? fixtures::e7_theta_n() : fixtures::e8_theta_n();
            if (X.id_of(as_ids(fa)) != qp.theta_A()) rep.fail("theta_A components");
            if (X.id_of(as_ids(fc)) != qp.theta_C()) rep.fail("theta_C components");
            if (X.id_of(as_ids(fn)) != qp.theta_N()) rep.fail("theta_N components");
            std::vector<int> hs;
            for (uint16_t comp : X.components(qp.theta_N())) hs.push_back(rs.height(comp));
            std::sort(hs.begin(), hs.end());
            if (hs != fixtures::theta_n_heights(st)) rep.fail("theta_N heights");
        }
        return R::sweep(rep);
    });
    run.add("extremal-covers", "theta_A minimal, theta_N maximal", [&] {
        SweepReport rep{"extremal-covers"};
        for (auto [a, b] : qp.covers()) {
            ++rep.checked;
            if (b == qp.theta_A()) rep.fail("theta_A has an in-cover");
            if (a == qp.theta_N()) rep.fail("theta_N has an out-cover");
            if (qp.level(b) != qp.level(a) + 1) rep.fail("cover level step != 1");
        }
        return R::sweep(rep);
    });
    run.add("order-generation", "long moves decompose into covers", [&] {
        SweepReport rep{"order-generation"};
        for (int r = 0; r < rs.num_positive(); ++r)
            for (int x = 0; x < X.size(); ++x) {
                int y = X.act_reflection(r, x);
                if (qp.level(y) <= qp.level(x) + 1) continue;
                ++rep.checked;
                if (!qp.leq(x, y))
                    rep.fail("x=" + std::to_string(x) + " r=" + std::to_string(r));
            }
        return R::sweep(rep);
    });
    run.add("alignment-free", "X_I membership, parity, minimal element", [&] {
        SweepReport rep = qp.verify_xi();
        if (int64_t(qp.xi_members().size()) != fixtures::xi_size(st))
            rep.fail("|X_I| = " + std::to_string(qp.xi_members().size()));
        return R::sweep(rep);
    });
    run.add("abstract-characterizations", "", [&] {
        return R::sweep(qp.abstract_characterizations());
    });
    if (st.family == Family::D) {
        run.add("matching-round-trip", "", [&] {
            SweepReport rep{"matchings"};
            for (int x = 0; x < X.size(); ++x) {
                ++rep.checked;
                if (X.from_matching(X.matching_of(x)) != x) rep.fail("x=" + std::to_string(x));
            }
            return R::sweep(rep);
        });
        run.add("permutation-action", "reflections act as transpositions", [&] {
            SweepReport rep{"phimap"};
            for (int r = 0; r < rs.num_positive(); ++r) {
                const Embed& e = rs.embedding(r);
                int a = -1, b = -1;
                for (int j = 0; j < rs.embed_dim(); ++j)
                    if (e[j] != 0) (a < 0 ? a : b) = j;
                for (int x = 0; x < X.size(); ++x) {
                    ++rep.checked;
                    auto m = X.matching_of(x);
                    for (auto& blk : m) {
                        auto swp = [&](int v) {
                            return v == a + 1 ? b + 1 : v == b + 1 ? a + 1 : v;
                        };
                        blk = {swp(blk.first), swp(blk.second)};
                        if (blk.first > blk.second) std::swap(blk.first, blk.second);
                    }
                    std::sort(m.begin(), m.end());
                    if (X.from_matching(m) != X.act_reflection(r, x))
                        rep.fail("r=" + std::to_string(r) + " x=" + std::to_string(x));
                }
            }
            return R::sweep(rep);
        });
        run.add("bruhat-isomorphism", "X_I vs S_k", [&] {
            return R::sweep(qp.bruhat_iso_type_d());
        });
    }

    // --- Macdonald representation -------------------------------------------
    run.add("basis-sizes", "noncrossing and nonnesting", [&] {
        long long expect = fixtures::dimension(st);
        bool ok = (long long)mac.noncrossing_basis().size() == expect &&
                  (long long)mac.nonnesting_basis().size() == expect;
        return R::boolean(ok, std::to_string(mac.noncrossing_basis().size()) + "/" +
                                  std::to_string(mac.nonnesting_basis().size()));
    });
    run.add("odd-heights", "noncrossing components", [&] {
        SweepReport rep{"odd-heights"};
        std::set<int> seen;
        for (int b : mac.noncrossing_basis())
            for (uint16_t comp : X.components(b)) {
                ++rep.checked;
                if (rs.height(comp) % 2 == 0) rep.fail("even-height component");
                seen.insert(comp);
            }
        for (int id = 0; id < rs.num_positive(); ++id) {
            if (rs.height(id) % 2 == 0) continue;
            ++rep.checked;
            if (!seen.count(id)) rep.fail("odd root " + std::to_string(id) + " unused");
        }
        return R::sweep(rep);
    });
    run.add("sign-coherence", "", [&] {
        SweepReport rep = mac.sign_coherence_report();
        if (st.family == Family::D) {
            long long expect = zigzag_numbers(k + 2)[k + 1];
            if (mac.theta_c_coefficient_sum() != expect)
                rep.fail("theta_C coefficient sum " +
                         std::to_string(mac.theta_c_coefficient_sum()));
        }
        return R::sweep(rep);
    });
    run.add("b-order-maximal", "theta_C dominates", [&] {
        return R::boolean(mac.theta_c_dominates_all(), "dominance fails");
    });
    run.add("change-of-basis", "unitriangular, integer inverse", [&] {
        auto cob = mac.change_of_basis();  // throws unless unitriangular
        int d = mac.dimension();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                long long s = 0;
                for (int t = 0; t < d; ++t) s += cob.matrix[i][t] * cob.inverse[t][j];
                if (s != (i == j ? 1 : 0)) return R::boolean(false, "inverse is wrong");
            }
        return R::boolean(true);
    });
    run.add("simple-reflections-on-basis", "closure", [&] {
        SweepReport rep{"resolve"};
        for (int i = 1; i <= n; ++i)
            for (int b : mac.noncrossing_basis()) {
                ++rep.checked;
                MacElement img = mac.simple_reflection_on_basis(i, b);
                MacElement direct;
                auto [y, s] = X.act_word_signed(std::vector<int>{i}, b);
                mac_add(direct, y, s);
                if (mac.normalize_noncrossing(direct) != img)
                    rep.fail("s_" + std::to_string(i) + " on " + std::to_string(b));
            }
        return R::sweep(rep);
    });
    run.add("confluence", "seed=" + std::to_string(opt.seed) + " trials=" +
                              std::to_string(opt.confluence_trials),
            [&] {
                std::mt19937_64 rng(opt.seed);
                SweepReport rep{"confluence"};
                for (int t = 0; t < opt.confluence_trials; ++t) {
                    ++rep.checked;
                    MacElement e = detail::random_element(X, rng);
                    MacElement det = mac.normalize_stepwise(e, 'C', nullptr);
                    if (det != mac.normalize_noncrossing(e)) rep.fail("memoized path differs");
                    if (mac.normalize_stepwise(e, 'C', &rng) != det)
                        rep.fail("trial " + std::to_string(t));
                    if (t % 10 == 0 &&
                        mac.normalize_stepwise(e, 'N', &rng) !=
                            mac.normalize_stepwise(e, 'N', nullptr))
                        rep.fail("nonnesting trial " + std::to_string(t));
                }
                return R::sweep(rep);
            });
    run.add("action-commutes-with-normalization", "random words", [&] {
        std::mt19937_64 rng(opt.seed + 3);
        SweepReport rep{"act-normalize"};
        for (int t = 0; t < 50; ++t) {
            ++rep.checked;
            MacElement e = detail::random_element(X, rng);
            auto w = detail::random_word(X, rng, 5);
            MacElement lhs = mac.normalize_noncrossing(mac.act_element(w, e));
            MacElement rhs =
                mac.normalize_noncrossing(mac.act_element(w, mac.normalize_noncrossing(e)));
            if (lhs != rhs) rep.fail("trial " + std::to_string(t));
        }
        return R::sweep(rep);
    });
    if (st.family == Family::D && n <= 6)
        run.add("ptolemy-expansion-identity", "exact polynomial identity", [&] {
            SweepReport rep{"ptolemy"};
            for (int x = 0; x < X.size(); ++x)
                for (const auto& q : X.quads(x)) {
                    if (q.label != 'C') continue;
                    ++rep.checked;
                    auto [xn, xa] = mac.ptolemy_rewrite_C(x, q);
                    Poly sum = mac.expand_poly(xn);
                    sum.add_scaled(mac.expand_poly(xa), 1);
                    if (!(mac.expand_poly(x) == sum)) rep.fail("x=" + std::to_string(x));
                }
            return R::sweep(rep);
        });
    if (!skip_heavy) {
        run.add("oracle-rank", "exact rational elimination", [&] {
            std::vector<Poly> polys(X.size());
            parallel_for(X.size(), opt.workers,
                         [&](int x) { polys[x] = mac.expand_poly(x); });
            SparseRankQ rank;
            for (const Poly& p : polys) rank.add_poly(p);
            return R::value(fixtures::dimension(st), rank.rank());
        });
        run.add("oracle-equivalence", "normal form re-expands exactly", [&] {
            std::vector<Poly> basis_polys;
            for (int b : mac.noncrossing_basis()) basis_polys.push_back(mac.expand_poly(b));
            std::vector<int> pos(X.size(), -1);
            for (size_t i = 0; i < mac.noncrossing_basis().size(); ++i)
                pos[mac.noncrossing_basis()[i]] = int(i);
            SweepReport rep{"oracle"};
            std::vector<char> bad(X.size(), 0);
            parallel_for(X.size(), opt.workers, [&](int x) {
                Poly combined;
                for (const auto& [b, coeff] : mac.nc_expansion(x))
                    combined.add_scaled(basis_polys[pos[b]], coeff);
                if (!(combined == mac.expand_poly(x))) bad[x] = 1;
            });
            for (int x = 0; x < X.size(); ++x) {
                ++rep.checked;
                if (bad[x]) rep.fail("x=" + std::to_string(x));
            }
            return R::sweep(rep);
        });
    }

    // --- sigma classes, Poincare series, w_N --------------------------------
    run.add("sigma-classes", "", [&] { return R::sweep(sp.verify_sigma_classes()); });
    run.add("eulerian-classes", "", [&] { return R::sweep(sp.verify_eulerian_classes()); });
    if (!skip_heavy)
        run.add("eulerian-equivalence", "all nonnesting/noncrossing pairs", [&] {
            return R::sweep(sp.verify_eulerian_equivalence());
        });
    run.add("poset-congruence", "", [&] { return R::sweep(sp.verify_congruence()); });
    run.add("poincare-x", "closed form", [&] {
        QPoly got = sp.poincare_X();
        QPoly want = SpecialEngine::closed_form_ps_x(st);
        return R::boolean(got == want, got.str());
    });
    run.add("poincare-xi", "closed form", [&] {
        QPoly got = sp.poincare_XI();
        QPoly want = SpecialEngine::closed_form_ps_xi(st, X.M());
        return R::boolean(got == want, got.str());
    });
    run.add("class-poincare-factorizations", "", [&] {
        return R::sweep(sp.verify_class_factorizations());
    });
    run.add("nonnesting-word", "greedy construction", [&] {
        SweepReport rep{"wn"};
        auto word = sp.nonnesting_word();
        ++rep.checked;
        if (int(word.size()) != X.M()) rep.fail("length != M");
        ++rep.checked;
        if (X.act_word(word, qp.theta_C()) != qp.theta_A())
            rep.fail("w_N does not send theta_C to theta_A");
        ++rep.checked;
        if (!sp.word_fully_commutative(word)) rep.fail("w_N is not fully commutative");
        auto fixture = fixtures::wn_word(st);
        if (!fixture.empty()) {
            ++rep.checked;
            if (sp.word_matrix(word) != sp.word_matrix(fixture))
                rep.fail("differs from the known reduced word as a group element");
            ++rep.checked;
            if (!sp.words_commutation_equivalent(word, fixture))
                rep.fail("not commutation-equivalent to the known word");
        }
        std::mt19937_64 rng(opt.seed + 4);
        for (int t = 0; t < 5; ++t) {
            ++rep.checked;
            if (sp.word_matrix(sp.nonnesting_word(&rng)) != sp.word_matrix(word))
                rep.fail("greedy construction is order-sensitive");
        }
        return R::sweep(rep);
    });
    run.add("heap-lattice", "order filters of the heap of w_N", [&] {
        auto h = sp.heap_lattice();
        SweepReport rep = sp.verify_heap_lattice(h);
        if ((long long)h.filters.size() != fixtures::dimension(st))
            rep.fail("filter count " + std::to_string(h.filters.size()));
        return R::sweep(rep);
    });
    run.add("sigma-step", "component sums under simple reflections", [&] {
        SweepReport rep{"sigma-step"};
        for (int x = 0; x < X.size(); ++x)
            for (int i = 1; i <= n; ++i) {
                ++rep.checked;
                Coeffs sum = X.sigma(x);
                if (X.has_component(x, rs.simple_id(i))) {
                    // s_i negates the component alpha_i: the raw image sum
                    // drops by 2 alpha_i while the n-root itself is fixed.
                    Coeffs expect = sum;
                    expect[i - 1] -= 2;
                    if (rs.reflect_simple(i, sum) != expect || X.act_simple(i, x) != x)
                        rep.fail("x=" + std::to_string(x) + " i=" + std::to_string(i));
                    continue;
                }
                // No component is negated, so sums transform linearly; an
                // AC move adds exactly 2 alpha_i.
                Coeffs img = X.sigma(X.act_simple(i, x));
                if (img != rs.reflect_simple(i, sum))
                    rep.fail("x=" + std::to_string(x) + " i=" + std::to_string(i));
                if (img != sum) {
                    Coeffs diff(n, 0);
                    for (int t = 0; t < n; ++t) diff[t] = img[t] - sum[t];
                    Coeffs expect(n, 0);
                    expect[i - 1] = 2;
                    Coeffs neg(n, 0);
                    neg[i - 1] = -2;
                    if (diff != expect && diff != neg)
                        rep.fail("x=" + std::to_string(x) + " i=" + std::to_string(i));
                }
            }
        return R::sweep(rep);
    });
    run.add("nonnesting-height-gap", "ht(sigma(theta_C)) - ht(sigma(theta_A)) = 2M", [&] {
        return R::value(2 * X.M(), sigma_height(X.sigma(qp.theta_C())) -
                                       sigma_height(X.sigma(qp.theta_A())));
    });

    // --- Coxeter elements ---------------------------------------------------
    {
        std::vector<int> cox(n);
        std::iota(cox.begin(), cox.end(), 1);
        if (!skip_heavy)
            run.add("cyclic-sieving", "c = s_1 s_2 ... s_n", [&] {
                return R::sweep(sp.cyclic_sieving(cox));
            });
        run.add("coxeter-coverage", "orbit covering every positive root once", [&] {
            if (st.family == Family::D) {
                auto orbit = sp.coxeter_orbit(cox, qp.theta_N());
                bool ok = orbit.full_coverage &&
                          int(orbit.orbit.size()) == st.coxeter_number() / 2;
                return R::boolean(ok, "theta_N orbit size " +
                                          std::to_string(orbit.orbit.size()));
            }
            auto seed = sp.find_covering_seed(cox);
            return R::boolean(seed.has_value(), "no covering orbit found");
        });
        run.add("coxeter-orbit-sizes", "divide h/2", [&] {
            SweepReport rep{"orbit-sizes"};
            int m = st.coxeter_number() / 2;
            std::vector<char> seen(X.size(), 0);
            for (int x = 0; x < X.size(); ++x) {
                if (seen[x]) continue;
                auto orbit = sp.coxeter_orbit(cox, x);
                for (int y : orbit.orbit) seen[y] = 1;
                ++rep.checked;
                if (m % int(orbit.orbit.size()) != 0)
                    rep.fail("orbit of " + std::to_string(x) + " has size " +
                             std::to_string(orbit.orbit.size()));
            }
            return R::sweep(rep);
        });
    }

    // --- exceptional structures ---------------------------------------------
    if (st.family == Family::E7) {
        FanoE7 fano(qp);
        run.add("fano-bijection", "30 labellings", [&] {
            return R::sweep(fano.verify_bijection());
        });
        run.add("fano-extremal-labellings", "", [&] {
            SweepReport rep{"fano-fixtures"};
            rep.checked = 2;
            FanoLabelling lc = fixtures::e7_fano_theta_c();
            FanoLabelling ln = fixtures::e7_fano_theta_n();
            if (fano.labellings().at(qp.theta_C()) != lc) rep.fail("L_C differs");
            if (fano.labellings().at(qp.theta_N()) != ln) rep.fail("L_N differs");
            return R::sweep(rep);
        });
        run.add("fano-xor", "L_N closed under binary XOR", [&] {
            SweepReport rep{"fano-xor"};
            int hits = 0;
            for (const auto& [x, lab] : fano.labellings()) {
                bool closed = true;
                for (const auto& t : lab) closed = closed && ((t[0] ^ t[1]) == t[2]);
                ++rep.checked;
                if (closed) ++hits;
                if (closed != (x == qp.theta_N()))
                    rep.fail("XOR closure at x=" + std::to_string(x));
            }
            if (hits != 1) rep.fail("XOR-closed labelling is not unique");
            return R::sweep(rep);
        });
        run.add("fano-intersections", "same-parity pairs share one triple", [&] {
            return R::sweep(fano.verify_pair_intersections());
        });
        run.add("fano-level-formula", "level = 14 - d", [&] {
            return R::sweep(fano.verify_level_formula());
        });
        run.add("fano-equivariance", "S_7 permutes coordinates", [&] {
            return R::sweep(fano.verify_equivariance());
        });
    }
    if (st.family == Family::E8) {
        ExceptionalE8 exc(qp, opt.workers);
        run.add("steiner-systems", "S(3,4,8) on all 8-roots", [&] {
            return R::sweep(exc.verify_steiner_all());
        });
        run.add("hadamard", "theta_C component matrix", [&] {
            return R::sweep(exc.hadamard_check());
        });
        run.add("extremal-embeddings", "theta_C/theta_N sign matrices", [&] {
            SweepReport rep{"sign-matrices"};
            auto rows_of = [&](int x) {
                std::vector<Embed> rows;
                for (uint16_t comp : X.components(x)) rows.push_back(rs.embedding(comp));
                std::sort(rows.begin(), rows.end());
                return rows;
            };
            auto want_c = fixtures::e8_theta_c_embedding();
            auto want_n = fixtures::e8_theta_n_embedding();
            std::sort(want_c.begin(), want_c.end());
            std::sort(want_n.begin(), want_n.end());
            rep.checked = 2;
            if (rows_of(qp.theta_C()) != want_c) rep.fail("theta_C rows");
            if (rows_of(qp.theta_N()) != want_n) rep.fail("theta_N rows");
            return R::sweep(rep);
        });
        run.add("xi-parity-intersections", "", [&] {
            return R::sweep(exc.verify_same_parity_intersections());
        });
        run.add("xi-x-height", "", [&] { return R::sweep(exc.verify_x_height_one()); });
        Graph gamma = exc.build_gamma();
        Graph ortho = exc.build_orthogonality_graph();
        run.add("srg-gamma", "(120,63,30,36)", [&] {
            auto r = srg_certify(gamma);
            bool ok = r.ok && r.v == 120 && r.k == 63 && r.lambda == 30 && r.mu == 36;
            return R::boolean(ok, r.witness.empty() ? "wrong parameters" : r.witness);
        });
        run.add("srg-orthogonality", "(120,63,30,36)", [&] {
            auto r = srg_certify(ortho);
            bool ok = r.ok && r.v == 120 && r.k == 63 && r.lambda == 30 && r.mu == 36;
            return R::boolean(ok, r.witness.empty() ? "wrong parameters" : r.witness);
        });
        run.add("orthogonality-cliques", "8-cliques are the positive 8-roots", [&] {
            auto cliques = exc.max_cliques(ortho);
            if ((long long)cliques.size() != 2025)
                return R::value(2025, (long long)cliques.size());
            std::vector<Components> sorted(cliques.begin(), cliques.end());
            std::sort(sorted.begin(), sorted.end());
            bool same = sorted == X.elements();
            return R::boolean(same, "clique set differs from the 8-roots");
        });
        run.add("gamma-cliques", "8-clique count", [&] {
            return R::value(2025, (long long)exc.max_cliques(gamma).size());
        });
        run.add("graph-distinction", "edge clique-count invariants", [&] {
            auto rep = exc.distinguish(gamma, ortho);
            if (!rep.conclusive) return R::boolean(false, "inconclusive");
            // Frozen values: the 8-clique edge statistic ties at {15} on
            // both graphs and the pair histograms coincide, so the 5-clique
            // edge statistic decides, splitting the edges of Gamma in two.
            bool as_recorded = rep.deciding_stage == 3 &&
                               rep.gamma_max_clique_values == std::vector<long long>{15} &&
                               rep.ortho_max_clique_values == std::vector<long long>{15} &&
                               rep.gamma_k5_values == std::vector<long long>{300, 332} &&
                               rep.ortho_k5_values == std::vector<long long>{300};
            return R::boolean(as_recorded, "statistics differ from the recorded fixtures");
        });
    }

    // --- serialization -------------------------------------------------------
    run.add("export-determinism", "across worker counts", [&] {
        NRootSet rebuilt(rs, opt.workers == 1 ? 2 : 1);
        bool same = nroots_json(rebuilt).dump(2) == nroots_json(X).dump(2) &&
                    root_system_json(rs).dump(2) == root_system_json(rs).dump(2);
        QPStructure qp2(rebuilt);
        same = same && hasse_edges_text(qp2) == hasse_edges_text(qp);
        return R::boolean(same, "exports differ");
    });

    return run.take();
}

inline Json report_json(const std::vector<CheckResult>& results) {
    Json arr = Json::array();
    for (const auto& r : results) {
        Json j;
        j["check"] = r.name;
        j["type"] = r.type;
        j["parameters"] = r.params;
        j["pass"] = r.pass;
        j["expected"] = r.expected;
        j["actual"] = r.actual;
        j["elapsed_ms"] = r.elapsed_ms;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace nroot

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "nroot/checks.hpp"

using namespace nroot;

namespace {

Ctx& ctx(const std::string& name) { return context(SystemType::parse(name)); }

int matching_id(Ctx& c, std::vector<std::pair<int, int>> m) {
    return c.X.from_matching(m);
}

}  // namespace

TEST_CASE("the D4 Ptolemy rewrite") {
    Ctx& c = ctx("D4");
    int crossing = matching_id(c, {{1, 3}, {2, 4}});
    int nesting = matching_id(c, {{1, 4}, {2, 3}});
    int alignment = matching_id(c, {{1, 2}, {3, 4}});
    const auto& q = c.X.quads(crossing)[0];
    REQUIRE(q.label == 'C');
    auto [xn, xa] = c.mac.ptolemy_rewrite_C(crossing, q);
    CHECK(xn == nesting);
    CHECK(xa == alignment);
    CHECK_THROWS_AS(c.mac.ptolemy_rewrite_C(crossing, c.X.quads(nesting)[0]),
                    std::invalid_argument);
    // sums: sigma(alignment) < sigma(nesting) = sigma(crossing)
    CHECK(c.X.sigma(nesting) == c.X.sigma(crossing));
    Coeffs a = c.X.sigma(alignment), n = c.X.sigma(nesting);
    bool strictly_less = a != n;
    for (size_t i = 0; i < a.size(); ++i) strictly_less = strictly_less && a[i] <= n[i];
    CHECK(strictly_less);
}

TEST_CASE("a D6 rewrite inside a larger element") {
    Ctx& c = ctx("D6");
    int x = matching_id(c, {{1, 4}, {2, 5}, {3, 6}});
    // the quadruple supported on {1,2,4,5} is the crossing {14, 25}
    for (const auto& q : c.X.quads(x)) {
        std::set<int> support;
        for (uint16_t m : q.members) {
            const Embed& e = c.rs.embedding(m);
            for (int j = 0; j < 6; ++j)
                if (e[j]) support.insert(j + 1);
        }
        if (support != std::set<int>{1, 2, 4, 5}) continue;
        REQUIRE(q.label == 'C');
        auto [xn, xa] = c.mac.ptolemy_rewrite_C(x, q);
        CHECK(xn == matching_id(c, {{1, 5}, {2, 4}, {3, 6}}));
        CHECK(xa == matching_id(c, {{1, 2}, {4, 5}, {3, 6}}));
    }
}

TEST_CASE("basis sizes and the D6 fixtures") {
    CHECK(ctx("D4").mac.dimension() == 2);
    CHECK(ctx("D6").mac.dimension() == 5);
    CHECK(ctx("D8").mac.dimension() == 14);
    CHECK(ctx("E7").mac.dimension() == 15);
    CHECK(ctx("E8").mac.dimension() == 50);

    Ctx& c = ctx("D6");
    std::set<int> nc(c.mac.noncrossing_basis().begin(), c.mac.noncrossing_basis().end());
    std::set<int> expect_nc = {
        matching_id(c, {{1, 6}, {2, 5}, {3, 4}}), matching_id(c, {{1, 6}, {2, 3}, {4, 5}}),
        matching_id(c, {{1, 4}, {2, 3}, {5, 6}}), matching_id(c, {{1, 2}, {3, 6}, {4, 5}}),
        matching_id(c, {{1, 2}, {3, 4}, {5, 6}})};
    CHECK(nc == expect_nc);
    std::set<int> nn(c.mac.nonnesting_basis().begin(), c.mac.nonnesting_basis().end());
    std::set<int> expect_nn = {
        matching_id(c, {{1, 4}, {2, 5}, {3, 6}}), matching_id(c, {{1, 3}, {2, 5}, {4, 6}}),
        matching_id(c, {{1, 3}, {2, 4}, {5, 6}}), matching_id(c, {{1, 2}, {3, 5}, {4, 6}}),
        matching_id(c, {{1, 2}, {3, 4}, {5, 6}})};
    CHECK(nn == expect_nn);
}

TEST_CASE("noncrossing normalization") {
    Ctx& c = ctx("D6");
    // an element already noncrossing is fixed
    int b = c.mac.noncrossing_basis()[0];
    MacElement e{{b, Rat(3)}};
    CHECK(c.mac.normalize_noncrossing(e) == e);
    // theta_C is the sum of all five noncrossing 6-roots
    MacElement tc{{c.qp.theta_C(), Rat(1)}};
    MacElement norm = c.mac.normalize_noncrossing(tc);
    REQUIRE(norm.size() == 5);
    Rat sum = 0;
    for (const auto& [x, coeff] : norm) {
        CHECK(coeff == 1);
        CHECK(c.X.counts(x).C == 0);
        sum += coeff;
    }
    CHECK(sum == 5);
    CHECK(ctx("D8").mac.theta_c_coefficient_sum() == 16);
}

TEST_CASE("Euler zigzag numbers") {
    CHECK(zigzag_numbers(9) ==
          std::vector<long long>{1, 1, 1, 2, 5, 16, 61, 272, 1385});
}

TEST_CASE("nonnesting normalization in D4") {
    Ctx& c = ctx("D4");
    int crossing = matching_id(c, {{1, 3}, {2, 4}});
    int nesting = matching_id(c, {{1, 4}, {2, 3}});
    int alignment = matching_id(c, {{1, 2}, {3, 4}});
    MacElement e{{nesting, Rat(1)}};
    MacElement norm = c.mac.normalize_nonnesting(e);
    MacElement expect{{crossing, Rat(1)}, {alignment, Rat(-1)}};
    CHECK(norm == expect);
    MacElement fixed{{crossing, Rat(2)}};
    CHECK(c.mac.normalize_nonnesting(fixed) == fixed);
}

TEST_CASE("span of all n-roots has the basis dimension") {
    Ctx& c = ctx("D6");
    SparseRankQ rank;
    for (int x = 0; x < c.X.size(); ++x) rank.add_poly(c.mac.expand_poly(x));
    CHECK(rank.rank() == 5);
}

TEST_CASE("polynomial expansion of the D4 crossing") {
    Ctx& c = ctx("D4");
    int crossing = matching_id(c, {{1, 3}, {2, 4}});
    // (e_1^2 - e_3^2)(e_2^2 - e_4^2)
    Poly direct = Poly::constant(1);
    for (auto [i, j] : {std::pair{0, 2}, std::pair{1, 3}}) {
        std::vector<int> diff(4, 0), sum(4, 0);
        diff[i] = 1, diff[j] = -1;
        sum[i] = 1, sum[j] = 1;
        direct = direct.times_linear(diff).times_linear(sum);
    }
    CHECK(c.mac.expand_poly(crossing) == direct);
}

TEST_CASE("Ptolemy identity holds exactly in expansion") {
    for (const char* name : {"D4", "D6"}) {
        Ctx& c = ctx(name);
        for (int x = 0; x < c.X.size(); ++x)
            for (const auto& q : c.X.quads(x)) {
                if (q.label != 'C') continue;
                auto [xn, xa] = c.mac.ptolemy_rewrite_C(x, q);
                Poly sum = c.mac.expand_poly(xn);
                sum.add_scaled(c.mac.expand_poly(xa), 1);
                REQUIRE(c.mac.expand_poly(x) == sum);
            }
    }
}

TEST_CASE("expansions are homogeneous of degree n") {
    for (const char* name : {"D6", "E7"}) {
        Ctx& c = ctx(name);
        for (int x : {0, c.X.size() / 2, c.X.size() - 1}) {
            Poly p = c.mac.expand_poly(x);
            REQUIRE(!p.is_zero());
            for (const auto& [key, coeff] : p.terms()) {
                auto e = Poly::unpack_key(key, c.rs.embed_dim());
                CHECK(std::accumulate(e.begin(), e.end(), 0) == c.rs.rank());
            }
        }
    }
}

TEST_CASE("the expansion memo is safe under concurrent use") {
    RootSystem rs(SystemType::parse("D8"));
    NRootSet X(rs);
    MacEngine mac(X);
    std::vector<std::vector<std::pair<int, long long>>> results(X.size());
    parallel_for(X.size(), 4, [&](int x) { results[x] = mac.nc_expansion(x); });
    Ctx& c = ctx("D8");
    for (int x = 0; x < X.size(); ++x) REQUIRE(results[x] == c.mac.nc_expansion(x));
}

TEST_CASE("oracle equivalence on all of D6") {
    Ctx& c = ctx("D6");
    std::vector<Poly> basis;
    for (int b : c.mac.noncrossing_basis()) basis.push_back(c.mac.expand_poly(b));
    for (int x = 0; x < c.X.size(); ++x) {
        Poly combined;
        const auto& exp = c.mac.nc_expansion(x);
        for (const auto& [b, coeff] : exp) {
            int pos = int(std::find(c.mac.noncrossing_basis().begin(),
                                    c.mac.noncrossing_basis().end(), b) -
                          c.mac.noncrossing_basis().begin());
            combined.add_scaled(basis[pos], coeff);
        }
        REQUIRE(combined == c.mac.expand_poly(x));
    }
}

TEST_CASE("change of basis in D4") {
    Ctx& c = ctx("D4");
    auto cob = c.mac.change_of_basis();
    REQUIRE(cob.matrix.size() == 2);
    CHECK(cob.matrix[0] == std::vector<long long>{1, 0});
    CHECK(cob.matrix[1] == std::vector<long long>{1, 1});
    CHECK(cob.inverse[1] == std::vector<long long>{-1, 1});
    // rows are the nonnesting elements in sigma order: theta_A then theta_C
    CHECK(cob.nonnesting_order == std::vector<int>{c.qp.theta_A(), c.qp.theta_C()});
    CHECK(cob.noncrossing_order == std::vector<int>{c.qp.theta_A(), c.qp.theta_N()});
}

TEST_CASE("change of basis rejects incompatible orderings") {
    Ctx& c = ctx("D4");
    std::vector<int> backwards = {c.qp.theta_C(), c.qp.theta_A()};
    CHECK_THROWS_AS(c.mac.change_of_basis(backwards), std::invalid_argument);
}

TEST_CASE("sign coherence") {
    for (const char* name : {"D6", "E7"}) CHECK(ctx(name).mac.sign_coherence_report().pass());
}

TEST_CASE("simple reflections on the noncrossing basis") {
    Ctx& c = ctx("D6");
    // a component case: s_i(x) = -x
    int b = c.X.from_matching({{1, 2}, {3, 4}, {5, 6}});
    MacElement img = c.mac.simple_reflection_on_basis(1, b);
    CHECK(img == MacElement{{b, Rat(-1)}});
    // the resolving case: s_i(m) = m + m'
    int m = c.X.from_matching({{1, 6}, {2, 5}, {3, 4}});  // alpha_1 not a component
    MacElement out = c.mac.simple_reflection_on_basis(1, m);
    REQUIRE(out.size() == 2);
    CHECK(out.count(m) == 1);
    for (const auto& [y, coeff] : out) {
        CHECK(coeff == 1);
        CHECK(c.X.counts(y).C == 0);
    }
    // exhaustive closure over E7
    Ctx& e7 = ctx("E7");
    for (int i = 1; i <= 7; ++i)
        for (int x : e7.mac.noncrossing_basis())
            REQUIRE_NOTHROW(e7.mac.simple_reflection_on_basis(i, x));
}

TEST_CASE("theta_C is maximal in the coefficient order") {
    CHECK(ctx("D6").mac.theta_c_dominates_all());
    CHECK(ctx("E7").mac.theta_c_dominates_all());
    Ctx& c = ctx("D6");
    CHECK(c.X.matching_of(c.mac.theta_C()) ==
          std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}});
}

TEST_CASE("confluence under randomized strategies") {
    std::mt19937_64 rng(99);
    for (const char* name : {"D6", "E7"}) {
        Ctx& c = ctx(name);
        for (int trial = 0; trial < 25; ++trial) {
            MacElement e = detail::random_element(c.X, rng);
            MacElement det_c = c.mac.normalize_stepwise(e, 'C', nullptr);
            CHECK(det_c == c.mac.normalize_noncrossing(e));
            CHECK(c.mac.normalize_stepwise(e, 'C', &rng) == det_c);
            MacElement det_n = c.mac.normalize_stepwise(e, 'N', nullptr);
            CHECK(det_n == c.mac.normalize_nonnesting(e));
            CHECK(c.mac.normalize_stepwise(e, 'N', &rng) == det_n);
        }
    }
}

TEST_CASE("odd heights in the noncrossing basis") {
    Ctx& c = ctx("E7");
    std::set<int> used;
    for (int b : c.mac.noncrossing_basis())
        for (uint16_t comp : c.X.components(b)) {
            CHECK(c.rs.height(comp) % 2 == 1);
            used.insert(comp);
        }
    for (int id = 0; id < c.rs.num_positive(); ++id)
        if (c.rs.height(id) % 2 == 1) CHECK(used.count(id) == 1);
}

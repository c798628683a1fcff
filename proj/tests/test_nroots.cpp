#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "nroot/checks.hpp"

using namespace nroot;

namespace {

Ctx& ctx(const std::string& name) { return context(SystemType::parse(name)); }

// Independent oracle: enumerate all maximal sets of pairwise-orthogonal
// positive roots by plain recursion over the bilinear form, then keep the
// maximal ones by an explicit extension scan. No bitsets, no pruning.
void brute_force_rec(const RootSystem& rs, std::vector<int>& cur, int next,
                     std::set<std::vector<int>>& out) {
    bool extended = false;
    for (int cand = next; cand < rs.num_positive(); ++cand) {
        bool ok = true;
        for (int c : cur) ok = ok && rs.bilinear_ids(c, cand) == 0;
        if (!ok) continue;
        extended = true;
        cur.push_back(cand);
        brute_force_rec(rs, cur, cand + 1, out);
        cur.pop_back();
    }
    if (!extended) {
        // maximal with respect to ids above; confirm global maximality
        for (int cand = 0; cand < rs.num_positive(); ++cand) {
            bool ok = true;
            for (int c : cur) ok = ok && rs.bilinear_ids(c, cand) == 0;
            if (ok) return;
        }
        out.insert(cur);
    }
}

std::set<std::vector<int>> brute_force_maximal_sets(const RootSystem& rs) {
    std::set<std::vector<int>> out;
    std::vector<int> cur;
    brute_force_rec(rs, cur, 0, out);
    return out;
}

long long count_perfect_matchings(int n) {  // (n-1)!! by direct recursion
    if (n == 0) return 1;
    return (n - 1) * count_perfect_matchings(n - 2);
}

int root_of_blocks(const NRootSet& X, int i, int j, int sign) {
    Embed e(X.rank(), 0);
    e[i - 1] = 1;
    e[j - 1] = sign;
    return X.embed_root_id(e);
}

}  // namespace

TEST_CASE("n-root counts match the brute-force oracle") {
    for (const char* name : {"D4", "D6"}) {
        Ctx& c = ctx(name);
        auto oracle = brute_force_maximal_sets(c.rs);
        REQUIRE((int)oracle.size() == c.X.size());
        for (const auto& s : oracle) {
            REQUIRE((int)s.size() == c.rs.rank());
            Components comps(s.begin(), s.end());
            CHECK(c.X.id_of(comps) >= 0);
        }
    }
}

TEST_CASE("n-root counts") {
    CHECK(ctx("D4").X.size() == 3);
    CHECK(ctx("D6").X.size() == count_perfect_matchings(6));  // 15
    CHECK(ctx("D8").X.size() == count_perfect_matchings(8));  // 105
    CHECK(ctx("E7").X.size() == 135);
    CHECK(ctx("E8").X.size() == 2025);
    CHECK(ctx("E7").X.M() == 7);
    CHECK(ctx("E8").X.M() == 14);
    CHECK(ctx("D8").X.M() == 6);
}

TEST_CASE("higher type D ranks enumerate too") {
    RootSystem rs(SystemType::parse("D12"));
    CHECK(rs.num_positive() == 132);
    NRootSet X(rs, 2);
    CHECK(X.size() == count_perfect_matchings(12));  // 10395
    CHECK(X.M() == 15);                              // C(6,2)
}

TEST_CASE("every k-subset of components spans the expected quadruples") {
    // coplanar quadruple counts per element
    for (const char* name : {"D8", "E7", "E8"}) {
        Ctx& c = ctx(name);
        for (int x = 0; x < c.X.size(); ++x)
            REQUIRE((int)c.X.quads(x).size() == c.X.M());
    }
}

TEST_CASE("action on matchings") {
    Ctx& c = ctx("D6");
    int x = c.X.from_matching({{1, 2}, {3, 6}, {4, 5}});
    // s_alpha for alpha = e_2 - e_4 acts as the transposition (2,4).
    int alpha = root_of_blocks(c.X, 2, 4, -1);
    REQUIRE(alpha >= 0);
    int y = c.X.act_reflection(alpha, x);
    CHECK(c.X.matching_of(y) ==
          std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}});
}

TEST_CASE("action fixes elements whose component is the mirror") {
    Ctx& c = ctx("D6");
    for (int x = 0; x < c.X.size(); ++x) {
        CHECK(c.X.act_word(std::vector<int>{}, x) == x);
        for (int i = 1; i <= 6; ++i)
            if (c.X.has_component(x, c.rs.simple_id(i))) {
                auto [y, sign] = c.X.act_word_signed(std::vector<int>{i}, x);
                CHECK(y == x);
                CHECK(sign == -1);
            }
    }
}

TEST_CASE("classification fixtures") {
    Ctx& c = ctx("D6");
    int x = c.X.from_matching({{1, 2}, {3, 6}, {4, 5}});
    std::map<std::set<int>, char> expect = {
        {{root_of_blocks(c.X, 1, 2, 1), root_of_blocks(c.X, 1, 2, -1),
          root_of_blocks(c.X, 4, 5, 1), root_of_blocks(c.X, 4, 5, -1)},
         'A'},
        {{root_of_blocks(c.X, 3, 6, 1), root_of_blocks(c.X, 3, 6, -1),
          root_of_blocks(c.X, 4, 5, 1), root_of_blocks(c.X, 4, 5, -1)},
         'N'}};
    int seen = 0;
    for (const auto& q : c.X.quads(x)) {
        std::set<int> mem(q.members.begin(), q.members.end());
        auto it = expect.find(mem);
        if (it != expect.end()) {
            CHECK(q.label == it->second);
            ++seen;
        }
    }
    CHECK(seen == 2);
    auto counts = c.X.counts(x);
    CHECK(counts.A == 2);
    CHECK(counts.C == 0);
    CHECK(counts.N == 1);
    CHECK(counts.level() == 2);
}

TEST_CASE("the D4 alignment from the simple roots") {
    Ctx& c = ctx("D4");
    std::array<uint16_t, 4> q{};
    q[0] = uint16_t(c.rs.simple_id(1));
    q[1] = uint16_t(c.rs.simple_id(3));
    q[2] = uint16_t(c.rs.simple_id(4));
    q[3] = uint16_t(c.rs.root_id({1, 2, 1, 1}));
    std::sort(q.begin(), q.end());
    CHECK(c.X.classify_heights(q) == 'A');
    CHECK(c.X.classify_oracle(q) == 'A');
}

TEST_CASE("height classification agrees with the D4-subsystem oracle") {
    for (const char* name : {"D6", "E7"}) {
        Ctx& c = ctx(name);
        for (int x = 0; x < c.X.size(); ++x)
            for (const auto& q : c.X.quads(x))
                REQUIRE(q.label == c.X.classify_oracle(q.members));
    }
}

TEST_CASE("moved quadruples") {
    Ctx& c = ctx("D6");
    int x = c.X.from_matching({{1, 2}, {3, 6}, {4, 5}});
    int alpha = root_of_blocks(c.X, 2, 4, -1);
    auto q = c.X.moved_quadruple(alpha, x);
    REQUIRE(q.has_value());
    std::set<int> mem(q->members.begin(), q->members.end());
    std::set<int> expect{root_of_blocks(c.X, 1, 2, 1), root_of_blocks(c.X, 1, 2, -1),
                         root_of_blocks(c.X, 4, 5, 1), root_of_blocks(c.X, 4, 5, -1)};
    CHECK(mem == expect);
    CHECK(q->label == 'A');
    // a mirror among the components only flips a sign
    int mirror = root_of_blocks(c.X, 1, 2, -1);
    CHECK(!c.X.moved_quadruple(mirror, x).has_value());
}

TEST_CASE("matchings round-trip and reject other types") {
    Ctx& c = ctx("D6");
    for (int x = 0; x < c.X.size(); ++x) CHECK(c.X.from_matching(c.X.matching_of(x)) == x);
    CHECK(c.X.matching_of(c.qp.theta_C()) ==
          std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}});
    Ctx& e7 = ctx("E7");
    CHECK_THROWS_AS(e7.X.matching_of(0), std::invalid_argument);
}

TEST_CASE("D4 matching fixture") {
    Ctx& c = ctx("D4");
    int x = c.X.from_matching({{1, 2}, {3, 4}});
    CHECK(c.X.matching_of(x) == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
}

TEST_CASE("height square sums are the frozen constants") {
    // derived by hand from the component heights of theta_A / theta_N
    std::map<std::string, long long> expect = {
        {"D4", 28}, {"D6", 110}, {"E7", 399}, {"E8", 1240}};
    for (const auto& [name, value] : expect) {
        Ctx& c = ctx(name);
        for (int x = 0; x < c.X.size(); ++x) {
            long long s = 0;
            for (uint16_t comp : c.X.components(x)) {
                long long h = c.rs.height(comp);
                s += h * h;
            }
            REQUIRE(s == value);
        }
    }
}

TEST_CASE("classification rejects forbidden height patterns") {
    // heights 1, 1, 1, 3 hit the equality h1+h2+h3 = h4, which cannot occur
    // for a genuine coplanar quadruple
    Ctx& c = ctx("D6");
    int h3 = -1;
    for (int id = 0; id < c.rs.num_positive(); ++id)
        if (c.rs.height(id) == 3) h3 = id;
    REQUIRE(h3 >= 0);
    std::array<uint16_t, 4> fake{uint16_t(c.rs.simple_id(1)), uint16_t(c.rs.simple_id(3)),
                                 uint16_t(c.rs.simple_id(5)), uint16_t(h3)};
    CHECK_THROWS_AS(c.X.classify_heights(fake), std::logic_error);
}

TEST_CASE("height facts per label") {
    // crossings have no simple component and a unique maximal height;
    // nestings have a unique minimal height
    for (const char* name : {"D8", "E7"}) {
        Ctx& c = ctx(name);
        for (int x = 0; x < c.X.size(); ++x)
            for (const auto& q : c.X.quads(x)) {
                std::array<int, 4> h;
                for (int i = 0; i < 4; ++i) h[i] = c.rs.height(q.members[i]);
                std::sort(h.begin(), h.end());
                if (q.label == 'C') {
                    REQUIRE(h[0] > 1);
                    REQUIRE(h[2] < h[3]);
                }
                if (q.label == 'N') REQUIRE(h[0] < h[1]);
            }
    }
}

TEST_CASE("components of a 4-root swap the other two partition classes") {
    // for any component alpha of one partition quadruple, s_alpha exchanges
    // the other two quadruples of the same D4 subsystem
    Ctx& c = ctx("D6");
    for (int x = 0; x < c.X.size(); ++x)
        for (const auto& q : c.X.quads(x)) {
            auto p = c.X.d4_partition(q.members);
            std::array<std::array<uint16_t, 4>, 3> parts{p.crossing, p.nesting, p.alignment};
            for (int which = 0; which < 3; ++which)
                for (uint16_t alpha : parts[which]) {
                    std::array<std::set<int>, 3> images;
                    for (int other = 0; other < 3; ++other) {
                        for (uint16_t beta : parts[other])
                            images[other].insert(c.rs.reflect_root(alpha, beta).id);
                    }
                    int a = (which + 1) % 3, b = (which + 2) % 3;
                    REQUIRE(images[a] ==
                            std::set<int>(parts[b].begin(), parts[b].end()));
                    REQUIRE(images[b] ==
                            std::set<int>(parts[a].begin(), parts[a].end()));
                }
        }
}

TEST_CASE("a moved quadruple keeps its D4 subsystem") {
    Ctx& c = ctx("D6");
    for (int r = 0; r < c.rs.num_positive(); ++r)
        for (int x = 0; x < c.X.size(); ++x) {
            int y = c.X.act_reflection(r, x);
            if (y == x) continue;
            auto before = c.X.moved_quadruple(r, x);
            auto after = c.X.moved_quadruple(r, y);
            auto pb = c.X.d4_partition(before->members);
            auto pa = c.X.d4_partition(after->members);
            REQUIRE(pb.crossing == pa.crossing);
            REQUIRE(pb.nesting == pa.nesting);
            REQUIRE(pb.alignment == pa.alignment);
            // 2 alpha = +-b1 +-b2 +-b3 +-b4 for some choice of signs
            bool expressible = false;
            for (int mask = 0; mask < 16 && !expressible; ++mask) {
                Coeffs sum(c.rs.rank(), 0);
                for (int i = 0; i < 4; ++i) {
                    int s = (mask >> i) & 1 ? 1 : -1;
                    for (int t = 0; t < c.rs.rank(); ++t)
                        sum[t] += s * c.rs.root(before->members[i])[t];
                }
                Coeffs twice(c.rs.rank());
                for (int t = 0; t < c.rs.rank(); ++t) twice[t] = 2 * c.rs.root(r)[t];
                expressible = sum == twice;
            }
            REQUIRE(expressible);
        }
}

TEST_CASE("orthogonal triples in E8 complete uniquely to coplanar quadruples") {
    // over arbitrary orthogonal triples of positive roots, not only those
    // inside an 8-root
    Ctx& c = ctx("E8");
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> pick(0, c.rs.num_positive() - 1);
    int tested = 0;
    while (tested < 50) {
        int a = pick(rng), b = pick(rng), d = pick(rng);
        if (a == b || a == d || b == d) continue;
        if (!c.rs.orthogonal(a, b) || !c.rs.orthogonal(a, d) || !c.rs.orthogonal(b, d))
            continue;
        ++tested;
        int completions = 0;
        for (int e = 0; e < c.rs.num_positive(); ++e) {
            if (e == a || e == b || e == d) continue;
            if (!c.rs.orthogonal(e, a) || !c.rs.orthogonal(e, b) || !c.rs.orthogonal(e, d))
                continue;
            Coeffs sum(c.rs.rank(), 0);
            for (int id : {a, b, d, e})
                for (int t = 0; t < c.rs.rank(); ++t) sum[t] += c.rs.root(id)[t];
            bool even = true;
            for (int v : sum) even = even && v % 2 == 0;
            if (!even) continue;
            for (int& v : sum) v /= 2;
            if (c.rs.root_id(sum) >= 0) ++completions;
        }
        REQUIRE(completions == 1);
    }
}

TEST_CASE("group action property") {
    std::mt19937_64 rng(23);
    Ctx& c = ctx("E7");
    std::uniform_int_distribution<int> pick(0, c.X.size() - 1);
    std::uniform_int_distribution<int> letter(1, 7);
    for (int t = 0; t < 100; ++t) {
        std::vector<int> w1(4), w2(4);
        for (int& l : w1) l = letter(rng);
        for (int& l : w2) l = letter(rng);
        int x = pick(rng);
        std::vector<int> cat = w1;
        cat.insert(cat.end(), w2.begin(), w2.end());
        CHECK(c.X.act_word(cat, x) == c.X.act_word(w1, c.X.act_word(w2, x)));
    }
}

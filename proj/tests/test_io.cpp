#include <catch2/catch_amalgamated.hpp>

#include "nroot/checks.hpp"
#include "nroot/json_io.hpp"

using namespace nroot;

namespace {
Ctx& ctx(const std::string& name) { return context(SystemType::parse(name)); }
}

TEST_CASE("root system export shape") {
    Ctx& c = ctx("D4");
    Json j = root_system_json(c.rs);
    CHECK(j["type"] == "D4");
    CHECK(j["rank"] == 4);
    CHECK(j["roots"].size() == 12);
    CHECK(j["heights"].size() == 12);
    CHECK(j["gram"][0][0] == 2);
    CHECK(j["gram"][1][3] == -1);
    // embeddings are rendered as p/q strings
    CHECK(j["embedding"][0][0].get<std::string>().find('/') != std::string::npos);
}

TEST_CASE("n-root export carries matchings in type D") {
    Json j = nroots_json(ctx("D6").X);
    CHECK(j["count"] == 15);
    CHECK(j["nroots"].size() == 15);
    CHECK(j["nroots"][0].contains("matching"));
    CHECK(j["nroots"][0]["components"].size() == 6);
    Json e7 = nroots_json(ctx("E7").X);
    CHECK(e7["nroots"].size() == 135);
    CHECK(!e7["nroots"][0].contains("matching"));
}

TEST_CASE("hasse export has the level header") {
    // D4 canonical ids: 0 = theta_A (level 0), 1 = theta_N (2), 2 = theta_C (1)
    std::string text = hasse_edges_text(ctx("D4").qp);
    CHECK(text == "# levels: 0 2 1\n0 2\n2 1\n");
}

TEST_CASE("exports are byte-stable across runs and worker counts") {
    Ctx& c = ctx("D6");
    NRootSet again(c.rs, 3);
    CHECK(nroots_json(again).dump(2) == nroots_json(c.X).dump(2));
    QPStructure qp2(again);
    CHECK(hasse_edges_text(qp2) == hasse_edges_text(c.qp));
    CHECK(root_system_json(c.rs).dump(2) == root_system_json(c.rs).dump(2));
}

TEST_CASE("basis and change-of-basis exports") {
    Ctx& c = ctx("D6");
    Json b = bases_json(c.mac, "noncrossing");
    CHECK(b["dimension"] == 5);
    CHECK(b["elements"].size() == 5);
    Json cob = cob_json(c.mac);
    CHECK(cob["matrix_row_major"].size() == 25);
    CHECK(cob["nonnesting_order"].size() == 5);
    Json e7 = cob_json(ctx("E7").mac);
    CHECK(e7["matrix_row_major"].size() == 225);  // 15 x 15
}

TEST_CASE("graph exports") {
    Ctx& c = ctx("E8");
    ExceptionalE8 exc(c.qp);
    Graph g = exc.build_gamma();
    std::string edges = graph_edges_text(g);
    CHECK(edges.rfind("# vertices: 120\n", 0) == 0);
    CHECK(std::count(edges.begin(), edges.end(), '\n') == 3781);  // header + 3780 edges
    std::string dot = graph_dot_text(g);
    CHECK(dot.rfind("graph gamma {", 0) == 0);
}

TEST_CASE("check report serialization") {
    VerifyOptions opt;
    opt.confluence_trials = 2;
    auto results = run_checks(SystemType::parse("D4"), opt, {"nroot-count", "qp1"});
    Json j = report_json(results);
    REQUIRE(j.size() == 2);
    CHECK(j[0].contains("check"));
    CHECK(j[0].contains("pass"));
    CHECK(j[0].contains("elapsed_ms"));
}

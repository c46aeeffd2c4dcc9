#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "stab/error.hpp"
#include "stab/scenario.hpp"

using namespace stab;
using namespace stab::scenario;

namespace {

json demo_scenario() {
    return json::parse(R"({
      "schema": 1,
      "sheaf_classes": [
        {"label": "E", "dim": 2, "rank": "2",
         "alpha": [["0", "2", "2"], ["0", "4", "2"]]},
        {"label": "F", "dim": 2, "rank": "1",
         "alpha": [["0", "2", "1"], ["0", "1", "1"]]}
      ],
      "families": [
        {"label": "fam", "target": "E", "candidates": ["F"], "relations": [["F", "E"]]}
      ],
      "representations": [
        {"label": "K", "field": "F2", "j0": 1, "h": [[1]], "dims": [2, 1],
         "maps": [[[ [["1", "0"]] ]]]},
        {"label": "KQ", "field": "Q", "j0": 1, "h": [[1]], "dims": [2, 1],
         "maps": [[[ [["1", "0"]] ]]]},
        {"label": "A", "field": "F2", "j0": 2, "h": [[1, 1], [1, 1]], "dims": [1, 1, 1, 1],
         "maps": [[[ [["0"]] ], [ [["1"]] ]], [[ [["1"]] ], [ [["0"]] ]]]},
        {"label": "B", "field": "F2", "j0": 2, "h": [[1, 1], [1, 1]], "dims": [1, 1, 1, 1],
         "maps": [[[ [["1"]] ], [ [["1"]] ]], [[ [["1"]] ], [ [["1"]] ]]]}
      ],
      "params": {"family": "fam", "tensor": "P1xP1"}
    })");
}

} // namespace

TEST_CASE("scenario parse and label resolution") {
    Scenario sc = parse_scenario(demo_scenario());
    CHECK(sc.sheaf_classes.size() == 2);
    CHECK(sc.sheaf("E").rank == Scalar(2));
    CHECK(sc.family("fam").candidates.size() == 1);
    CHECK(sc.representation("K").dims() == quiver::DimVector{2, 1});
    CHECK(std::holds_alternative<quiver::Rep<Fq>>(sc.representation("K").rep));
    CHECK(std::holds_alternative<quiver::Rep<Scalar>>(sc.representation("KQ").rep));
    CHECK(sc.tensor("P1xP1").rho == 2); // bundled fallback
    CHECK_THROWS_AS(sc.sheaf("missing"), input_error);
    json bad = demo_scenario();
    bad["schema"] = 7;
    CHECK_THROWS_AS(parse_scenario(bad), input_error);
}

TEST_CASE("walls and chambers reports") {
    Scenario sc = parse_scenario(demo_scenario());
    json walls = run_walls(sc, sc.params);
    CHECK(walls["count"] == 1);
    CHECK(walls["walls"][0]["normal"] == json::array({"1", "-1"}));

    json chambers = run_chambers(sc, sc.params, ExecMode::Serial);
    CHECK(chambers["count"] == 3);
    for (const auto& c : chambers["chambers"]) CHECK(c["verified"] == true);
    // byte-identical output for identical inputs
    json again = run_chambers(sc, sc.params, ExecMode::Parallel);
    CHECK(chambers.dump() == again.dump());
}

TEST_CASE("locate and stability reports") {
    Scenario sc = parse_scenario(demo_scenario());
    json p = sc.params;
    p["sigma"] = json::array({"1", "2"});
    p["rational_representative"] = true;
    json loc = run_locate(sc, p);
    CHECK(loc["signs"] == "-");
    CHECK(loc["representative_verified"] == true);

    // the irrational point 1+sqrt(2) locates exactly
    p["sigma"] = json::array({"1+1\xe2\x88\x9a""2", "2"});
    CHECK(run_locate(sc, p)["signs"] == "+");

    // sigma = (1,1) lies on the wall: the candidate ties exactly
    json s = sc.params;
    s["sigma"] = json::array({"1", "1"});
    json tied = run_stability(sc, s);
    CHECK(tied["verdict"] == "StrictlySemistable");
    CHECK(tied["witnesses"] == json::array({"F"}));
    // off the wall the candidate is stability-compatible
    s["sigma"] = json::array({"1", "2"});
    CHECK(run_stability(sc, s)["verdict"] == "Stable");
}

TEST_CASE("quiver reports") {
    Scenario sc = parse_scenario(demo_scenario());
    json p;
    p["rep"] = "K";
    p["sigma"] = json::array({"1"});
    p["strategy"] = "exhaustive";
    json check = run_quiver(sc, "check", p, 0, Caps{});
    CHECK(check["verdict"] == "Unstable");
    CHECK(check["witness"]["dims"] == json::array({1, 0}));
    CHECK(check["exhaustive"] == true);

    json hn = run_quiver(sc, "hn", p, 0, Caps{});
    CHECK(hn["steps"].size() == 2);
    CHECK(hn["factor_slopes"][0] == "inf");

    // seeded strategy on the exact-field twin
    json pq;
    pq["rep"] = "KQ";
    pq["sigma"] = json::array({"1"});
    pq["strategy"] = "seeded";
    json cq = run_quiver(sc, "check", pq, 42, Caps{});
    CHECK(cq["verdict"] == "Unstable");
    CHECK(cq["exhaustive"] == false);
    // exhaustive strategy on exact fields is rejected
    pq["strategy"] = "exhaustive";
    CHECK_THROWS_AS(run_quiver(sc, "check", pq, 0, Caps{}), input_error);
}

TEST_CASE("cone reports") {
    Scenario sc = parse_scenario(demo_scenario());
    json p;
    p["tensor"] = "P1xP1xP1";
    json hodge = run_cone(sc, "hodge", p, ExecMode::Serial);
    CHECK(hodge["all_hodge_ok"] == true);

    p["tensor"] = "P1xP1";
    p["L"] = json::array({"1", "1"});
    p["beta"] = json::array({"1", "-1"});
    CHECK(run_cone(sc, "kplus", p, ExecMode::Serial)["contained"] == false);

    json b;
    b["tensor"] = "P2";
    b["L"] = json::array({"1"});
    b["chern"] = json::object();
    b["chern"]["rank"] = "2";
    b["chern"]["c1"] = json::array({"0"});
    b["chern"]["c2pair"] = json::array({json{{"idx", json::array()}, {"val", "-1"}}});
    json bog = run_cone(sc, "bogomolov", b, ExecMode::Serial);
    CHECK(bog["discriminant_pair"] == "-1/2");
    CHECK(bog["unstable_certified"] == true);

    json ident;
    ident["tensor"] = "P2";
    ident["L"] = json::array({"1"});
    ident["A"] = json{{"rank", "1"}, {"c1", json::array({"1"})}};
    ident["B"] = json{{"rank", "1"}, {"c1", json::array({"-1"})}};
    json rep = run_cone(sc, "identity", ident, ExecMode::Serial);
    CHECK(rep["equal"] == true);
    CHECK(rep["lhs"] == "-2");
}

TEST_CASE("approx reports") {
    json split = run_approx_split(Scalar(1), Scalar(2), std::nullopt);
    CHECK(split["lambda"] == "3");
    CHECK(split["verification"] == "ok");
    json split4 = run_approx_split(Scalar(1), Scalar(2), Rational(4));
    CHECK(split4["sigma"] == "2/3");
    CHECK(split4["sigma_prime"] == "1/12");

    Scenario sc = parse_scenario(demo_scenario());
    json p;
    p["tensor"] = "P1xP1";
    p["omega"] = json::array({"1", "0+1\xe2\x88\x9a""2"});
    p["candidates"] = json::array({json::array({"1", "1"}), json::array({"1", "2"}),
                                   json::array({"2", "1"}), json::array({"1", "3"})});
    json om = run_approx_omega(sc, p);
    CHECK(om["verification"] == "ok");
    CHECK(om["rank_maximal"] == true);
}

TEST_CASE("vgit scan report") {
    Scenario sc = parse_scenario(demo_scenario());
    json p;
    p["samples"] = json::array({"A", "B"});
    p["start"] = json::array({"1", "3"});
    p["end"] = json::array({"3", "1"});
    p["steps"] = 8;
    p["strategy"] = "exhaustive";
    p["candidate_subdims"] = json::array({json::array({1, 0, 0, 1}), json::array({0, 1, 1, 0})});
    json scan = run_vgit_scan(sc, p, 0, Caps{});
    CHECK(scan["flips"].size() == 2);
    CHECK(scan["events"].size() == 3);
    CHECK(scan["definitive"] == true);
    CHECK(scan["candidate_walls"].size() == 1);
    CHECK(scan["flips"][0]["u_zero"] == "1/2");
    // deterministic: identical runs produce identical reports
    json scan2 = run_vgit_scan(sc, p, 0, Caps{});
    CHECK(scan.dump() == scan2.dump());
}

TEST_CASE("csv flattening emits scalar strings only") {
    json j;
    j["a"] = "3/4";
    j["b"] = json::array({"1", "2"});
    j["c"] = json{{"d", true}};
    std::string csv = to_csv(j);
    CHECK(csv.find("a,3/4\n") != std::string::npos);
    CHECK(csv.find("b[1],2\n") != std::string::npos);
    CHECK(csv.find("c.d,true\n") != std::string::npos);
}

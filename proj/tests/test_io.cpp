#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "polybern/io.hpp"
#include "polybern/verify.hpp"

using namespace polybern;

TEST_CASE("series json schema") {
    Truncation tr({2, 2}, 3);
    Series s(tr);
    s.add_term({1, 0}, Rational(1, 2));
    s.add_term({0, 2}, Rational(-3));
    Json j = json_of(s);
    CHECK(j["vars"] == 2);
    CHECK(j["trunc"]["per_var"] == Json::array({2, 2}));
    CHECK(j["trunc"]["total"] == 3);
    REQUIRE(j["terms"].size() == 2);
    // map order: (0,2) before (1,0)
    CHECK(j["terms"][0]["exp"] == Json::array({0, 2}));
    CHECK(j["terms"][0]["num"] == "-3");
    CHECK(j["terms"][0]["den"] == "1");
    CHECK(j["terms"][1]["num"] == "1");
    CHECK(j["terms"][1]["den"] == "2");
}

TEST_CASE("big integers serialize as decimal strings") {
    Rational big(factorial(40), Int(3));
    Json j = json_of(big);
    CHECK(j["num"].get<std::string>().size() > 19);  // beyond 64-bit range
    CHECK(int_from_decimal(j["num"].get<std::string>()) == big.numerator());
}

TEST_CASE("pb table csv is lexicographic with header") {
    PBTable t = multi_indexed_table(GFSpec({-1, -1}, 2), {1, 1});
    std::ostringstream os;
    write_csv(os, t);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "m_1,m_2,value_num,value_den");
    std::vector<std::string> rows;
    while (std::getline(is, line)) rows.push_back(line);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("0,0,", 0) == 0);
    CHECK(rows[3] == "1,1,26,1");
}

TEST_CASE("empty cap box gives header-only semantics at caps 0") {
    PBTable t = multi_indexed_table(GFSpec({0, 0}, 2), {0, 0});
    REQUIRE(t.entries.size() == 1);  // the (0,0) cell only
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str().rfind("m_1,m_2,value_num,value_den\n", 0) == 0);
}

TEST_CASE("congruence report json carries witnesses") {
    auto reps = check_pairwise(3, 1, 1, 1, 1, 5);
    Json j = json_of(reps[0]);
    CHECK(j["statement"] == "thm2.2-first");
    CHECK(j["failures"].is_array());
    CHECK(j["params"]["p"] == "3");
    CHECK(j["cells"].get<long>() > 0);
}

TEST_CASE("finer period report json") {
    auto rep = search_finer_period(2, 2, 1, 1, 2, 2, 6);
    Json j = json_of(rep);
    CHECK(j["proven_period"] == 2);
    CHECK(j["statement"] == "remark2.6-finer-period");
    bool proven_listed = false;
    for (const auto& c : j["candidates"])
        if (c["q"] == 2) proven_listed = c["holds"].get<bool>();
    CHECK(proven_listed);
}

TEST_CASE("serialization is deterministic") {
    auto render = [] {
        PBTable t = multi_indexed_table(GFSpec({-2, 1}, 2), {2, 2});
        return json_of(t).dump(2);
    };
    CHECK(render() == render());
    std::ostringstream a, b;
    write_csv(a, multi_indexed_table(GFSpec({-2, 1}, 2), {2, 2}));
    write_csv(b, multi_indexed_table(GFSpec({-2, 1}, 2), {2, 2}));
    CHECK(a.str() == b.str());
}

TEST_CASE("suite reports aggregate cleanly") {
    SuiteReport rep = verify_classical_reduction(8);
    CHECK(rep.ok());
    CHECK(rep.cells == 9);
}

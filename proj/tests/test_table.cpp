#include <doctest.h>

#include "isoq/table.hpp"

using namespace isoq;

TEST_SUITE("table") {

TEST_CASE("CSV uses CRLF and round trips") {
    Table t{{"name", "n", "x", "z"}, {}};
    t.rows.push_back({std::string("a,b"), 3LL, 0.1, cplx(1.0, -2.5)});
    t.rows.push_back({std::string("say \"hi\""), -7LL, 1e-300, cplx(0.0, 0.0)});
    const std::string csv = render_table(t, TableFormat::Csv);
    CHECK(csv.find("name,n,x,z\r\n") == 0);
    CHECK(csv.find("\"a,b\"") != std::string::npos);
    const Table back = parse_csv(csv);
    CHECK(back.header == t.header);
    REQUIRE(back.rows.size() == 2);
    CHECK(std::get<std::string>(back.rows[0][0]) == "a,b");
    CHECK(std::get<long long>(back.rows[0][1]) == 3);
    CHECK(std::get<double>(back.rows[0][2]) == 0.1);
    CHECK(std::get<cplx>(back.rows[0][3]) == cplx(1.0, -2.5));
    CHECK(std::get<std::string>(back.rows[1][0]) == "say \"hi\"");
    CHECK(std::get<double>(back.rows[1][2]) == 1e-300);
}

TEST_CASE("empty tables keep the header") {
    const Table t{{"a", "b"}, {}};
    CHECK(render_table(t, TableFormat::Csv) == "a,b\r\n");
    CHECK(parse_csv(render_table(t, TableFormat::Csv)).header == t.header);
    CHECK(render_table(t, TableFormat::Json) == "[]\n");
}

TEST_CASE("JSON rows are objects") {
    Table t{{"z", "k"}, {}};
    t.rows.push_back({cplx(1.0, 2.0), 4LL});
    const std::string j = render_table(t, TableFormat::Json);
    CHECK(j.find("\"z\": [") != std::string::npos);
    CHECK(j.find("\"k\": 4") != std::string::npos);
}

}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "ptcross/core.hpp"
#include "ptcross/table.hpp"

using namespace ptcross;

namespace {

Table sample() {
    Table t;
    t.add_meta("tool", "ptcross");
    t.add_meta("tol", 1e-8);
    t.add_meta("note", "a, \"quoted\" value");
    t.columns = {"x", "flag", "label"};
    t.rows.push_back({0.1, true, std::string("D5")});
    t.rows.push_back({-2.5e-17, false, std::string("1.5")});
    t.rows.push_back({1.0 / 3.0, true, std::string("with,comma")});
    t.rows.push_back({0.0, false, std::string("")});
    return t;
}

} // namespace

TEST_CASE("format_double") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    for (double v : {1.0 / 3.0, -7.25e-300, 6.02214076e23, 2.0965696734438366}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("CSV round trip") {
    const Table t = sample();
    std::ostringstream out;
    write_csv(out, t);
    const std::string text = out.str();
    CHECK(text.rfind("# tool: ptcross\n# tol: 1e-08\n", 0) == 0);
    CHECK(text.find("x,flag,label\n") != std::string::npos);
    // Numeric-looking strings are quoted so they read back as strings.
    CHECK(text.find(",\"1.5\"") != std::string::npos);
    std::istringstream in(text);
    CHECK(read_csv(in) == t);
    CHECK(read_table(text) == t);
}

TEST_CASE("JSON round trip") {
    const Table t = sample();
    std::ostringstream out;
    write_json(out, t);
    const std::string text = out.str();
    CHECK(text.front() == '{');
    CHECK(text.find("\"rows\"") != std::string::npos);
    std::istringstream in(text);
    CHECK(read_json(in) == t);
    CHECK(read_table(text) == t);
}

TEST_CASE("non-finite values become null in JSON") {
    Table t;
    t.columns = {"v"};
    t.rows.push_back({std::numeric_limits<double>::infinity()});
    std::ostringstream out;
    write_json(out, t);
    CHECK(out.str().find("\"v\": null") != std::string::npos);
}

TEST_CASE("accessors") {
    const Table t = sample();
    CHECK(t.meta_value("tool") == "ptcross");
    CHECK(t.column_index("label") == 2);
    CHECK(t.number(2, "x") == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(static_cast<void>(t.meta_value("missing")), Error);
    CHECK_THROWS_AS(static_cast<void>(t.column_index("missing")), Error);
    CHECK_THROWS_AS(static_cast<void>(t.number(0, "flag")), Error);
}

TEST_CASE("malformed input") {
    CHECK_THROWS_AS(read_table("a,b\n1,2,3\n"), Error);
    CHECK_THROWS_AS(read_table("# only: meta\n"), Error);
    CHECK_THROWS_AS(read_table("{\"meta\": {"), Error);
    CHECK(format_from_string("json") == Format::JSON);
    CHECK_THROWS_AS(format_from_string("xml"), UsageError);
}

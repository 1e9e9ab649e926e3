#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tracer/csv.hpp"
#include "tracer/error.hpp"

using namespace tracer;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("format_sig gives 12 significant digits") {
    CHECK(format_sig(0.4673899545102183) == "0.46738995451");
    CHECK(format_sig(1.0) == "1");
    CHECK(format_sig(-2.5e-7) == "-2.5e-07");
}

TEST_CASE("csv writer schema line, comments and rows") {
    const std::string path = "csv_writer_test.csv";
    {
        CsvWriter csv(path, "tracer.test.v1", {"a", "b"});
        csv.comment("seed", 7.0);
        csv.row({"1", "2"});
        csv.row({"3", "4"});
    }
    const std::string body = slurp(path);
    CHECK(body == "# schema=tracer.test.v1\n# seed=7\na,b\n1,2\n3,4\n");
    std::remove(path.c_str());
}

TEST_CASE("csv writer rejects malformed usage") {
    const std::string path = "csv_writer_test2.csv";
    CsvWriter csv(path, "tracer.test.v1", {"a", "b"});
    CHECK_THROWS_AS(csv.row({"only-one"}), value_error);
    csv.row({"1", "2"});
    CHECK_THROWS_AS(csv.comment("late", 1.0), value_error);
    std::remove(path.c_str());
}

#include <sstream>

#include "support.hpp"

using namespace ellhyp;

TEST_CASE("config parsing") {
    std::istringstream in("# defaults overridden\ntol = 1e-9\nseed=7  # trailing comment\n\nformat = csv\n");
    auto c = parse_config(in);
    CHECK(c.tol == 1e-9);
    CHECK(c.seed == 7);
    CHECK(c.format == "csv");
    CHECK(c.max_level == 10);
}

TEST_CASE("config validation") {
    std::istringstream bad("tol = -1\n");
    CHECK_THROWS_AS(parse_config(bad), PreconditionError);
    std::istringstream unknown("colour = red\n");
    CHECK_THROWS_AS(parse_config(unknown), PreconditionError);
    std::istringstream noeq("tol 1e-9\n");
    CHECK_THROWS_AS(parse_config(noeq), PreconditionError);
    std::istringstream fmt("format = xml\n");
    CHECK_THROWS_AS(parse_config(fmt), PreconditionError);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/12") == Rational(1, 4));
    CHECK(parse_rational("-2") == Rational(-2));
}

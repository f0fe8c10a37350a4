// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#include <weaksym/runconfig.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace weaksym;

TEST_CASE("run configuration round-trips through its textual form", "[runconfig]") {
  RunConfig c;
  c.command = "converge";
  c.family = "3d";
  c.dim = 3;
  c.levels = 5;
  c.mu = 0.1234567890123456;
  c.lambda = 17.25;
  c.compliance = "dim-aware";
  c.out = "/tmp/report.csv";
  c.format = "pretty";
  c.no_timestamp = true;
  CHECK(parse_config(to_text(c)) == c);

  const RunConfig d;  // all defaults
  CHECK(parse_config(to_text(d)) == d);

  // Serializing the reparse reproduces the text itself.
  CHECK(to_text(parse_config(to_text(c))) == to_text(c));
}

TEST_CASE("partial configs keep defaults; comments are skipped", "[runconfig]") {
  const RunConfig c = parse_config("# a comment\n\ncommand=certify\ndim=3\n");
  CHECK(c.command == "certify");
  CHECK(c.dim == 3);
  CHECK(c.levels == 4);
  CHECK(c.mu == 1.0);
  CHECK(c.format == "csv");
  CHECK_FALSE(c.no_timestamp);
}

TEST_CASE("malformed configs are rejected with the offending line", "[runconfig]") {
  CHECK_THROWS_WITH(parse_config("command certify\n"),
                    Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_WITH(parse_config("command=certify\nbogus=1\n"),
                    Catch::Matchers::ContainsSubstring("unknown key 'bogus'"));
  CHECK_THROWS_AS(parse_config("dim=two\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("mu=\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("no_timestamp=maybe\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("levels=99999999999999999999\n"), std::invalid_argument);
}

TEST_CASE("cross-field validation", "[runconfig]") {
  RunConfig c;
  c.command = "converge";
  CHECK_NOTHROW(c.validate());

  SECTION("command") {
    c.command = "frobnicate";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
  SECTION("dim") {
    c.dim = 4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
  SECTION("family name") {
    c.family = "1d";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
  SECTION("family/dim conflict only matters for converge") {
    c.family = "3d";  // dim stays 2
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.command = "certify";
    CHECK_NOTHROW(c.validate());
  }
  SECTION("levels") {
    c.levels = 2;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
  SECTION("material") {
    c.mu = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.mu = 1;
    c.lambda = -0.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
  SECTION("compliance and format") {
    c.compliance = "exotic";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.compliance = "paper";
    c.format = "xml";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
}

TEST_CASE("configured material carries the compliance choice", "[runconfig]") {
  RunConfig c;
  c.mu = 2.5;
  c.lambda = 0.75;
  c.compliance = "dim-aware";
  const Material m = c.material();
  CHECK(m.mu == 2.5);
  CHECK(m.lambda == 0.75);
  CHECK(m.kind == ComplianceKind::DIM_AWARE);
  c.compliance = "paper";
  CHECK(c.material().kind == ComplianceKind::PAPER);
}

#include "doctest.h"

#include "cli_config.hpp"

using qcli::Command;
using qcli::parse_config;
using qcli::UsageError;

TEST_CASE("defaults and overrides") {
    auto c = parse_config({"--q", "0.5", "--nu", "0", "report"});
    CHECK(c.q == "0.5");
    CHECK(c.nu == "0");
    CHECK(c.digits == 60);
    CHECK(c.tol == "1e-40");
    CHECK(c.n_min == -48);
    CHECK(c.n_max == 96);
    CHECK_FALSE(c.window_given);
    CHECK(c.command == Command::Report);
    auto d = parse_config({"report"});
    CHECK(d.nu == "0.5");
}

TEST_CASE("domain gates are usage errors") {
    CHECK_THROWS_AS(parse_config({"--q", "1.0", "report"}), UsageError);
    CHECK_THROWS_AS(parse_config({"--nu", "-1", "report"}), UsageError);
    CHECK_THROWS_AS(parse_config({"--digits", "abc", "report"}), UsageError);
    CHECK_THROWS_AS(parse_config({"--nmin", "5", "--nmax", "1", "report"}), UsageError);
    CHECK_THROWS_AS(parse_config({"--format", "xml", "report"}), UsageError);
    CHECK_THROWS_AS(parse_config({}), UsageError);
    CHECK_THROWS_AS(parse_config({"frobnicate"}), UsageError);
}

TEST_CASE("subcommands") {
    auto e = parse_config({"eval", "knu", "--x", "q^3", "--nu", "1"});
    CHECK(e.command == Command::Eval);
    CHECK(e.function == "knu");
    CHECK(e.x == "q^3");
    CHECK(e.nu == "1");
    CHECK_THROWS_AS(parse_config({"eval", "ga", "--x", "1"}), UsageError);
    CHECK_THROWS_AS(parse_config({"eval", "foo", "--x", "1"}), UsageError);
    auto t = parse_config({"transform", "f.json", "--out", "g.json", "--format", "csv"});
    CHECK(t.command == Command::Transform);
    CHECK(t.inputs == std::vector<std::string>{"f.json"});
    CHECK(t.format == "csv");
    auto cv = parse_config({"convolve", "a.json", "b.json"});
    CHECK(cv.inputs.size() == 2);
    auto k = parse_config({"kernel", "build", "--spec", "s.json", "--kernel-out", "k.json"});
    CHECK(k.command == Command::Kernel);
    CHECK(k.spec == "s.json");
    CHECK(parse_config({"kernel", "--spec", "s.json"}).command == Command::Kernel);
    CHECK_THROWS_AS(parse_config({"kernel", "build"}), UsageError);
    auto v = parse_config({"verify", "--corpus", "dir", "--criterion", "3", "--nmin", "-24"});
    CHECK(v.command == Command::Verify);
    CHECK(v.corpus == "dir");
    CHECK(v.criterion == 3);
    CHECK(v.window_given);
    CHECK_THROWS_AS(parse_config({"verify", "--criterion", "11"}), UsageError);
    CHECK_THROWS_AS(parse_config({"corpus"}), UsageError);
    CHECK(parse_config({"corpus", "--out", "d"}).command == Command::Corpus);
}

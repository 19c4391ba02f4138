#include "doctest.h"

#include "qvd/corpus.hpp"
#include "qvd/io.hpp"

#include <filesystem>

using namespace qvd;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto d = std::filesystem::temp_directory_path() / ("qvd_test_" + name);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("grid function json round trip") {
    QParams p = QParams::make("0.5", "0.5");
    PrecisionScope s(60);
    GridFunction f = sample(QGrid(-3, 4), [&](int n) { return qpow(p.q, n) / 3; }, DecayClass::Rapid, DecayClass::Integrable);
    std::string text = gridfn_to_json(f, p);
    GridFile back = gridfn_from_json(text, 60);
    CHECK(back.q == "0.5");
    CHECK(back.nu == "0.5");
    CHECK(back.f.grid == f.grid);
    CHECK(back.f.decay == DecayClass::Rapid);
    CHECK(back.f.spectral == DecayClass::Integrable);
    CHECK(back.f.values == f.values);
    CHECK(gridfn_to_json(back.f, p) == text);
    CHECK(gridfn_to_csv(f, p).find("n,x,value") != std::string::npos);
    CHECK_THROWS_AS(gridfn_from_json("{\"q\":\"0.5\"}", 60), Error);
    CHECK_THROWS_AS(gridfn_from_json("not json", 60), Error);
}

TEST_CASE("kernel spec json") {
    KernelSpec k = kernel_spec_from_json(R"({"c": "0.25", "zeros": ["1", "2"]})", 60);
    CHECK(k.c == Real("0.25"));
    REQUIRE(k.zeros.size() == 2);
    CHECK(k.zeros[1] == 2);
    CHECK_THROWS_AS(kernel_spec_from_json(R"({"c": "-1", "zeros": []})", 60), Error);
    CHECK_THROWS_AS(kernel_spec_from_json(R"({"c": 0.25})", 60), Error);
}

TEST_CASE("plan cache round trip") {
    QParams p = QParams::make("0.5", "0");
    auto L = make_lattice(p);
    QGrid g(-4, 12);
    TransformPlan plan = build_plan(L, g, g);
    std::string text = plan_to_json(plan);
    TransformPlan back = plan_from_json(text, L);
    CHECK(back.matrix == plan.matrix);
    CHECK(back.tail_small == plan.tail_small);
    CHECK(back.tail_large == plan.tail_large);
    CHECK(plan_to_json(back) == text);
    auto other = make_lattice(QParams::make("0.5", "1"));
    CHECK_THROWS_AS(plan_from_json(text, other), Error);
    CHECK(plan_cache_name(p, g, g) == plan_cache_name(p, g, g));
    CHECK(plan_cache_name(p, g, g) != plan_cache_name(p, QGrid(-4, 13), g));
}

TEST_CASE("corpus directory round trip") {
    QParams p = QParams::make("0.5", "-0.5");
    auto L = make_lattice(p);
    QGrid g(-24, 64);
    auto items = make_corpus(*L, g);
    CHECK(corpus_dir_name(p) == "nu_m0.5");
    CHECK(corpus_dir_name(QParams::make("0.5", "1")) == "nu_1");
    auto dir = scratch("corpus") / corpus_dir_name(p);
    std::filesystem::create_directories(dir);
    write_corpus(dir.string(), items, p);
    auto back = read_corpus(dir.string(), p);
    REQUIRE(back.size() == items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        CHECK(back[i].name == items[i].name);
        CHECK(back[i].declared_v == items[i].declared_v);
        CHECK(back[i].f.values == items[i].f.values);
        CHECK(back[i].f.decay == items[i].f.decay);
        CHECK(back[i].f.spectral == items[i].f.spectral);
    }
    CHECK_THROWS_AS(read_corpus(dir.string(), QParams::make("0.5", "0")), Error);
    CHECK_THROWS_AS(read_corpus((dir / "missing").string(), p), Error);
}

TEST_CASE("file errors") {
    try {
        read_file("/nonexistent/file.json");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
}

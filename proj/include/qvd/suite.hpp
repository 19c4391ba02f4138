#pragma once

#include "qvd/kernels.hpp"
#include "qvd/vdk.hpp"

#include <map>
#include <memory>
#include <string>

namespace qvd {

struct SuiteConfig {
    std::string q = "0.5";
    std::vector<std::string> nus = {"-0.5", "0", "0.5", "1"};
    int digits = 60;
    std::string tol = "1e-40";
    QGrid window{-24, 64};
    std::string corpus_root;  // empty: corpus generated in memory
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double metric = 0;
    double threshold = 0;
    std::string detail;
    double seconds = 0;
};

struct SuiteReport {
    std::vector<CriterionResult> results;
    bool pass = true;
};

constexpr int kCriteria = 10;

class Suite {
public:
    explicit Suite(SuiteConfig cfg);
    ~Suite();
    CriterionResult run(int id);
    SuiteReport run_all();
    const SuiteConfig& config() const { return cfg_; }

private:
    struct Context;
    Context& context(const std::string& nu);
    CriterionResult dispatch(int id);

    SuiteConfig cfg_;
    std::map<std::string, std::unique_ptr<Context>> ctx_;
};

std::string criterion_line(const CriterionResult& r);
// metadata (timings, timestamp) kept apart so the rest is byte-stable
std::string suite_report_to_json(const SuiteReport& r, const SuiteConfig& cfg, bool with_meta);

}  // namespace qvd

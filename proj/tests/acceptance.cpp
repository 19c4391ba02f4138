#include "qvd/suite.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    qvd::SuiteConfig cfg;
    int only = 0;
    const char* json_out = nullptr;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--corpus") && i + 1 < argc) cfg.corpus_root = argv[++i];
        else if (!std::strcmp(argv[i], "--json") && i + 1 < argc) json_out = argv[++i];
        else {
            std::cerr << "usage: acceptance [--criterion N] [--corpus DIR] [--json FILE]\n";
            return 2;
        }
    }
    qvd::Suite suite(cfg);
    qvd::SuiteReport rep;
    if (only) {
        rep.results.push_back(suite.run(only));
        rep.pass = rep.results.back().pass;
    } else {
        rep = suite.run_all();
    }
    for (const auto& r : rep.results) std::cout << qvd::criterion_line(r) << std::endl;
    if (json_out) std::ofstream(json_out) << qvd::suite_report_to_json(rep, cfg, true);
    return rep.pass ? 0 : 1;
}

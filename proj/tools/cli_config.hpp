#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qcli {

enum class Command { Eval, Transform, Convolve, Kernel, Verify, Report, Corpus };

struct RunConfig {
    std::string q = "0.5";
    std::string nu = "0.5";
    int digits = 60;
    std::string tol = "1e-40";
    int n_min = -48;
    int n_max = 96;
    bool window_given = false;
    Command command = Command::Report;
    std::string out;
    std::string format = "json";

    std::string function;  // eval
    std::string x;
    std::string param;
    std::vector<std::string> inputs;  // transform, convolve
    std::string decay;
    std::string spectral;
    std::string plan_cache;
    std::string spec;  // kernel
    std::string kernel_out;
    std::string corpus;  // verify
    std::string kernel;
    std::string zero_tol = "1e-30";
    int criterion = 0;
};

class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& what, std::string usage)
        : std::runtime_error(what), usage_(std::move(usage)) {}
    const std::string& usage() const { return usage_; }

private:
    std::string usage_;
};

// args without the program name
RunConfig parse_config(const std::vector<std::string>& args);

}  // namespace qcli

#pragma once

#include "qvd/kernels.hpp"
#include "qvd/vdk.hpp"

#include <string>

namespace qvd {

struct GridFile {
    std::string q;
    std::string nu;
    GridFunction f;
};

// {"q","nu","n_min","n_max","values"[, "decay_class", "spectral_class"]}
std::string gridfn_to_json(const GridFunction& f, const QParams& p);
GridFile gridfn_from_json(const std::string& text, int digits);
std::string gridfn_to_csv(const GridFunction& f, const QParams& p);

// {"c": "<decimal>", "zeros": ["<decimal>", ...]}
KernelSpec kernel_spec_from_json(const std::string& text, int digits);
std::string kernel_report_to_json(const KernelSpec& spec, const KernelReport& r, const QParams& p);

std::string plan_to_json(const TransformPlan& plan);
TransformPlan plan_from_json(const std::string& text, LatticePtr L);
std::string plan_cache_name(const QParams& p, const QGrid& in, const QGrid& out);

std::string vd_report_to_json(const VdReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// decimal form with enough digits to round-trip the working precision
std::string dec(const Real& v, int digits);

}  // namespace qvd

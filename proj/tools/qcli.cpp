#include "cli_config.hpp"

#include "qvd/qvd.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

using qcli::Command;
using qcli::RunConfig;

namespace {

constexpr int kUsage = 2;
constexpr int kNumeric = 3;
constexpr int kProperty = 4;

struct Failure {
    qvd_status status;
    std::string message;
};

int exit_code(qvd_status s) {
    switch (s) {
    case QVD_E_INVALID_ARGUMENT:
    case QVD_E_DOMAIN:
    case QVD_E_WINDOW:
    case QVD_E_IO:
    case QVD_E_PARSE:
    case QVD_E_INTEGRABILITY:
    case QVD_E_PRECONDITION:
        return kUsage;
    case QVD_E_CONSTANCY_VIOLATION:
    case QVD_E_NO_WITNESS:
        return kProperty;
    default:
        return kNumeric;
    }
}

void check(qvd_status s) {
    if (s != QVD_OK) throw Failure{s, qvd_last_error()};
}

struct Text {
    char* p = nullptr;
    ~Text() { qvd_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

template <class T, void (*D)(T*)>
struct Handle {
    T* p = nullptr;
    ~Handle() { D(p); }
};
using Context = Handle<qvd_context, qvd_context_destroy>;
using Fn = Handle<qvd_gridfn, qvd_gridfn_destroy>;
using Plan = Handle<qvd_plan, qvd_plan_destroy>;

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(c.out, std::ios::binary);
    if (!os) throw Failure{QVD_E_IO, "cannot write " + c.out};
    os << text;
}

void emit_fn(const RunConfig& c, qvd_context* ctx, const qvd_gridfn* f) {
    Text t;
    check(qvd_gridfn_to_string(ctx, f, c.format.c_str(), &t.p));
    emit(c, t.str());
}

const char* cache(const RunConfig& c) { return c.plan_cache.empty() ? nullptr : c.plan_cache.c_str(); }

void read_input(const RunConfig& c, qvd_context* ctx, const std::string& path, Fn& f) {
    check(qvd_gridfn_read(ctx, path.c_str(), &f.p));
    const char* decay = nullptr;
    check(qvd_gridfn_classes(f.p, &decay, nullptr));
    if (!c.decay.empty()) check(qvd_gridfn_set_decay(f.p, c.decay.c_str(), nullptr));
    else if (std::string(decay) == "unknown") check(qvd_gridfn_set_decay(f.p, "rapid", nullptr));
    if (!c.spectral.empty()) check(qvd_gridfn_set_decay(f.p, nullptr, c.spectral.c_str()));
}

int run(const RunConfig& c) {
    Context ctx;
    check(qvd_context_create(c.q.c_str(), c.nu.c_str(), c.digits, c.tol.c_str(), &ctx.p));
    switch (c.command) {
    case Command::Eval: {
        Text t;
        check(qvd_eval(ctx.p, c.function.c_str(), c.x.c_str(), c.param.empty() ? nullptr : c.param.c_str(), &t.p));
        emit(c, t.str());
        return 0;
    }
    case Command::Report: {
        Text t;
        check(qvd_report_json(ctx.p, c.n_min, c.n_max, &t.p));
        emit(c, t.str());
        return 0;
    }
    case Command::Transform: {
        Fn f, out;
        read_input(c, ctx.p, c.inputs[0], f);
        int lo = 0, hi = 0;
        check(qvd_gridfn_window(f.p, &lo, &hi));
        Plan plan;
        check(qvd_plan_create(ctx.p, lo, hi, cache(c), &plan.p));
        check(qvd_transform(plan.p, f.p, &out.p));
        emit_fn(c, ctx.p, out.p);
        return 0;
    }
    case Command::Convolve: {
        Fn f, g, out;
        read_input(c, ctx.p, c.inputs[0], f);
        read_input(c, ctx.p, c.inputs[1], g);
        int lo = 0, hi = 0;
        check(qvd_gridfn_window(f.p, &lo, &hi));
        Plan plan;
        check(qvd_plan_create(ctx.p, lo, hi, cache(c), &plan.p));
        check(qvd_convolve(plan.p, f.p, g.p, &out.p));
        emit_fn(c, ctx.p, out.p);
        return 0;
    }
    case Command::Kernel: {
        std::ifstream probe(c.spec);
        if (!probe) throw Failure{QVD_E_IO, "cannot read " + c.spec};
        Plan plan;
        check(qvd_plan_create(ctx.p, c.n_min, c.n_max, cache(c), &plan.p));
        Text report;
        Fn kernel;
        check(qvd_kernel_build(plan.p, c.spec.c_str(), &report.p, c.kernel_out.empty() ? nullptr : &kernel.p));
        if (kernel.p) check(qvd_gridfn_write(ctx.p, kernel.p, c.kernel_out.c_str(), "json"));
        emit(c, report.str());
        return 0;
    }
    case Command::Verify: {
        Text report;
        int pass = 0;
        if (!c.kernel.empty()) {
            if (c.corpus.empty()) throw qcli::UsageError("verify --kernel needs --corpus DIR", "");
            Fn k;
            check(qvd_gridfn_read(ctx.p, c.kernel.c_str(), &k.p));
            int lo = 0, hi = 0;
            check(qvd_gridfn_window(k.p, &lo, &hi));
            Plan plan;
            check(qvd_plan_create(ctx.p, lo, hi, cache(c), &plan.p));
            check(qvd_vd_check(plan.p, k.p, c.corpus.c_str(), c.zero_tol.c_str(), &report.p, &pass));
        } else {
            int lo = c.window_given ? c.n_min : -24, hi = c.window_given ? c.n_max : 64;
            Text lines;
            check(qvd_verify_suite(c.q.c_str(), c.digits, c.tol.c_str(), lo, hi,
                                   c.corpus.empty() ? nullptr : c.corpus.c_str(), c.criterion, &report.p,
                                   &lines.p, &pass));
            std::cerr << lines.str();
        }
        emit(c, report.str());
        return pass ? 0 : kProperty;
    }
    case Command::Corpus:
        check(qvd_corpus_write(ctx.p, c.n_min, c.n_max, c.out.c_str()));
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig c;
    try {
        c = qcli::parse_config(std::vector<std::string>(argv + 1, argv + argc));
    } catch (const qcli::UsageError& e) {
        if (*e.what()) std::cerr << "qcli: " << e.what() << "\n";
        std::cerr << e.usage();
        return kUsage;
    }
    try {
        return run(c);
    } catch (const qcli::UsageError& e) {
        std::cerr << "qcli: " << e.what() << "\n";
        return kUsage;
    } catch (const Failure& f) {
        std::cerr << "qcli: " << qvd_status_name(f.status) << ": " << f.message << "\n";
        return exit_code(f.status);
    }
}

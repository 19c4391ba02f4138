#include "qvd/qvd.h"

#include "qvd/bessel.hpp"
#include "qvd/corpus.hpp"
#include "qvd/io.hpp"
#include "qvd/suite.hpp"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

using namespace qvd;

struct qvd_context {
    QParams p;
    LatticePtr L;
};

struct qvd_gridfn {
    GridFunction f;
};

struct qvd_plan {
    TransformPlan plan;
};

namespace {

thread_local std::string g_last;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
qvd_status guard(F&& body) {
    try {
        g_last.clear();
        body();
        return QVD_OK;
    } catch (const Error& e) {
        g_last = e.what();
        return static_cast<qvd_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        g_last = "out of memory";
    } catch (const std::exception& e) {
        g_last = e.what();
    }
    return QVD_E_INTERNAL;
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorCode::InvalidArgument, std::string("null ") + what);
}

struct Point {
    Real x;
    bool lattice = false;
    int n = 0;
};

Point parse_point(const std::string& s, const QParams& p) {
    Point pt;
    if (s.rfind("q^", 0) == 0) {
        std::size_t used = 0;
        long n = 0;
        try {
            n = std::stol(s.substr(2), &used);
        } catch (const std::exception&) {
            fail(ErrorCode::Parse, "bad lattice point " + s);
        }
        if (used != s.size() - 2 || std::labs(n) > 100000) fail(ErrorCode::Parse, "bad lattice point " + s);
        pt.lattice = true;
        pt.n = static_cast<int>(n);
        pt.x = qpow(p.q, n);
        return pt;
    }
    pt.x = parse_decimal(s, p.precision_digits);
    if (pt.x > 0) {
        double est = static_cast<double>(log(pt.x) / log(p.q));
        if (std::fabs(est) < 100000) {
            long n = std::lround(est);
            Real qn = qpow(p.q, n);
            if (abs(pt.x / qn - 1) <= ten_pow(5 - p.precision_digits, p.precision_digits)) {
                pt.lattice = true;
                pt.n = static_cast<int>(n);
            }
        }
    }
    return pt;
}

std::string render(const qvd_context* ctx, const qvd_gridfn* f, const char* format) {
    std::string fmt = format ? format : "json";
    if (fmt == "json") return gridfn_to_json(f->f, ctx->p);
    if (fmt == "csv") return gridfn_to_csv(f->f, ctx->p);
    fail(ErrorCode::InvalidArgument, "format must be json or csv");
}

}  // namespace

extern "C" {

const char* qvd_version(void) { return "1.0.0"; }

const char* qvd_status_name(qvd_status s) {
    if (s == QVD_OK) return "Ok";
    if (s == QVD_E_INTERNAL) return "Internal";
    if (s >= 1 && s <= 16) return error_name(static_cast<ErrorCode>(s));
    return "Unknown";
}

const char* qvd_last_error(void) { return g_last.c_str(); }

void qvd_string_free(char* s) { std::free(s); }

qvd_status qvd_validate_params(const char* q, const char* nu, int digits, const char* tol) {
    return guard([&] {
        need(q, "q");
        need(nu, "nu");
        need(tol, "tol");
        (void)QParams::make(q, nu, digits, tol);
    });
}

qvd_status qvd_context_create(const char* q, const char* nu, int digits, const char* tol,
                              qvd_context** out) {
    return guard([&] {
        need(out, "output");
        need(q, "q");
        need(nu, "nu");
        need(tol, "tol");
        auto c = std::make_unique<qvd_context>();
        c->p = QParams::make(q, nu, digits, tol);
        c->L = make_lattice(c->p);
        *out = c.release();
    });
}

void qvd_context_destroy(qvd_context* ctx) { delete ctx; }

qvd_status qvd_report_json(qvd_context* ctx, int n_min, int n_max, char** out_json) {
    return guard([&] {
        need(ctx, "context");
        need(out_json, "output");
        const QParams& p = ctx->p;
        const int W = p.precision_digits;
        PrecisionScope scope(W);
        QGrid g(n_min, n_max);
        const Constants& k = ctx->L->constants();
        WronskianReport w = wronskian(*ctx->L, g);
        nlohmann::json j;
        j["q"] = p.q_text;
        j["nu"] = p.nu_text;
        j["digits"] = W;
        j["tol"] = dec(p.tol, 3);
        j["n_min"] = n_min;
        j["n_max"] = n_max;
        j["c_q_nu"] = dec(k.c_q_nu, W);
        j["B_q_nu"] = dec(k.B_q_nu, W);
        j["sigma_nu"] = dec(k.sigma_nu, W);
        j["j_bound"] = dec(bessel_bound(p), W);
        j["d_nu"] = dec(w.mean, W);
        j["wronskian_spread"] = dec(w.spread, 3);
        *out_json = dup(j.dump(1) + "\n");
    });
}

qvd_status qvd_eval(qvd_context* ctx, const char* fn, const char* x, const char* param,
                    char** out_json) {
    return guard([&] {
        need(ctx, "context");
        need(fn, "function name");
        need(x, "x");
        need(out_json, "output");
        const QParams& p = ctx->p;
        const int W = p.precision_digits;
        PrecisionScope scope(W);
        Point pt = parse_point(x, p);
        std::string name = fn;
        nlohmann::json j;
        j["function"] = name;
        j["x"] = x;
        if (pt.lattice) j["n"] = pt.n;
        j["digits"] = W;
        auto need_lattice = [&] {
            if (!pt.lattice) fail(ErrorCode::Domain, name + " is evaluated on the lattice q^n only");
        };
        auto param_value = [&](const char* what) {
            if (!param) fail(ErrorCode::InvalidArgument, name + " needs " + what);
            Real v = parse_decimal(param, W);
            if (!(v > 0)) fail(ErrorCode::Domain, std::string(what) + " must be positive");
            j[what] = param;
            return v;
        };
        Real value;
        if (name == "jnu") {
            BesselEval b = j_nu(pt.x, p);
            value = b.value;
            j["terms"] = b.terms_used;
            j["precision_used"] = b.precision_used;
        } else if (name == "inu") {
            value = i_nu(pt.x, p);
        } else if (name == "knu") {
            need_lattice();
            LatticeEval e = k_nu_eval(pt.n, *ctx->L);
            value = e.value;
            j["terms"] = e.terms;
            j["precision_used"] = e.precision_used;
        } else if (name == "ga") {
            Real a = param_value("a");
            need_lattice();
            value = g_a(pt.n, a, *ctx->L);
        } else if (name == "gauss") {
            Real c = param_value("c");
            value = gauss_kernel_at(pt.x, c, p);
        } else {
            fail(ErrorCode::InvalidArgument, "unknown function " + name);
        }
        j["value"] = dec(value, W);
        *out_json = dup(j.dump(1) + "\n");
    });
}

qvd_status qvd_gridfn_read(qvd_context* ctx, const char* path, qvd_gridfn** out) {
    return guard([&] {
        need(ctx, "context");
        need(path, "path");
        need(out, "output");
        GridFile gf = gridfn_from_json(read_file(path), ctx->p.precision_digits);
        const int W = ctx->p.precision_digits;
        if (parse_decimal(gf.q, W) != ctx->p.q || parse_decimal(gf.nu, W) != ctx->p.nu)
            fail(ErrorCode::Domain, std::string(path) + " was sampled at different q or nu");
        auto g = std::make_unique<qvd_gridfn>();
        g->f = std::move(gf.f);
        *out = g.release();
    });
}

qvd_status qvd_gridfn_to_string(qvd_context* ctx, const qvd_gridfn* f, const char* format,
                                char** out) {
    return guard([&] {
        need(ctx, "context");
        need(f, "function");
        need(out, "output");
        *out = dup(render(ctx, f, format));
    });
}

qvd_status qvd_gridfn_write(qvd_context* ctx, const qvd_gridfn* f, const char* path,
                            const char* format) {
    return guard([&] {
        need(ctx, "context");
        need(f, "function");
        need(path, "path");
        write_file(path, render(ctx, f, format));
    });
}

qvd_status qvd_gridfn_set_decay(qvd_gridfn* f, const char* decay, const char* spectral) {
    return guard([&] {
        need(f, "function");
        if (decay) f->f.decay = decay_from_name(decay);
        if (spectral) f->f.spectral = decay_from_name(spectral);
    });
}

qvd_status qvd_gridfn_classes(const qvd_gridfn* f, const char** decay, const char** spectral) {
    return guard([&] {
        need(f, "function");
        if (decay) *decay = decay_name(f->f.decay);
        if (spectral) *spectral = decay_name(f->f.spectral);
    });
}

qvd_status qvd_gridfn_window(const qvd_gridfn* f, int* n_min, int* n_max) {
    return guard([&] {
        need(f, "function");
        if (n_min) *n_min = f->f.grid.n_min;
        if (n_max) *n_max = f->f.grid.n_max;
    });
}

void qvd_gridfn_destroy(qvd_gridfn* f) { delete f; }

qvd_status qvd_plan_create(qvd_context* ctx, int n_min, int n_max, const char* cache_dir,
                           qvd_plan** out) {
    return guard([&] {
        need(ctx, "context");
        need(out, "output");
        QGrid g(n_min, n_max);
        auto pl = std::make_unique<qvd_plan>();
        if (cache_dir) {
            auto path = std::filesystem::path(cache_dir) / plan_cache_name(ctx->p, g, g);
            if (std::filesystem::exists(path)) {
                pl->plan = plan_from_json(read_file(path.string()), ctx->L);
            } else {
                pl->plan = build_plan(ctx->L, g, g);
                std::filesystem::create_directories(cache_dir);
                write_file(path.string(), plan_to_json(pl->plan));
            }
        } else {
            pl->plan = build_plan(ctx->L, g, g);
        }
        *out = pl.release();
    });
}

qvd_status qvd_plan_load(qvd_context* ctx, const char* path, qvd_plan** out) {
    return guard([&] {
        need(ctx, "context");
        need(path, "path");
        need(out, "output");
        auto pl = std::make_unique<qvd_plan>();
        pl->plan = plan_from_json(read_file(path), ctx->L);
        *out = pl.release();
    });
}

qvd_status qvd_plan_save(const qvd_plan* plan, const char* path) {
    return guard([&] {
        need(plan, "plan");
        need(path, "path");
        write_file(path, plan_to_json(plan->plan));
    });
}

void qvd_plan_destroy(qvd_plan* plan) { delete plan; }

qvd_status qvd_transform(const qvd_plan* plan, const qvd_gridfn* f, qvd_gridfn** out) {
    return guard([&] {
        need(plan, "plan");
        need(f, "function");
        need(out, "output");
        auto g = std::make_unique<qvd_gridfn>();
        g->f = fourier(f->f, plan->plan);
        *out = g.release();
    });
}

qvd_status qvd_convolve(const qvd_plan* plan, const qvd_gridfn* f, const qvd_gridfn* g,
                        qvd_gridfn** out) {
    return guard([&] {
        need(plan, "plan");
        need(f, "function");
        need(g, "function");
        need(out, "output");
        auto h = std::make_unique<qvd_gridfn>();
        h->f = convolve(f->f, g->f, plan->plan);
        *out = h.release();
    });
}

qvd_status qvd_kernel_build(const qvd_plan* plan, const char* spec_path, char** report_json,
                            qvd_gridfn** kernel) {
    return guard([&] {
        need(plan, "plan");
        need(spec_path, "spec path");
        const QParams& p = plan->plan.params;
        KernelSpec spec = kernel_spec_from_json(read_file(spec_path), p.precision_digits);
        KernelReport r = composite_kernel(spec, plan->plan, KernelOptions{});
        if (report_json) *report_json = dup(kernel_report_to_json(spec, r, p));
        if (kernel) {
            auto g = std::make_unique<qvd_gridfn>();
            g->f = std::move(r.kernel);
            *kernel = g.release();
        }
    });
}

qvd_status qvd_vd_check(const qvd_plan* plan, const qvd_gridfn* kernel, const char* corpus_dir,
                        const char* zero_tol, char** report_json, int* pass) {
    return guard([&] {
        need(plan, "plan");
        need(kernel, "kernel");
        need(corpus_dir, "corpus directory");
        const QParams& p = plan->plan.params;
        PrecisionScope scope(p.precision_digits);
        Real zt = parse_decimal(zero_tol ? zero_tol : "1e-30", p.precision_digits);
        std::filesystem::path dir(corpus_dir);
        if (!std::filesystem::exists(dir / "manifest.json") && std::filesystem::exists(dir / corpus_dir_name(p)))
            dir /= corpus_dir_name(p);
        std::vector<NamedFunction> corpus = read_corpus(dir.string(), p);
        VdReport r = vd_check(kernel->f, corpus, plan->plan, zt);
        if (report_json) *report_json = dup(vd_report_to_json(r));
        if (pass) *pass = r.pass ? 1 : 0;
    });
}

qvd_status qvd_verify_suite(const char* q, int digits, const char* tol, int n_min, int n_max,
                            const char* corpus_root, int criterion, char** report_json,
                            char** lines, int* pass) {
    return guard([&] {
        SuiteConfig cfg;
        if (q) cfg.q = q;
        cfg.digits = digits;
        if (tol) cfg.tol = tol;
        cfg.window = QGrid(n_min, n_max);
        if (corpus_root) cfg.corpus_root = corpus_root;
        for (const auto& nu : cfg.nus) (void)QParams::make(cfg.q, nu, cfg.digits, cfg.tol);
        Suite suite(cfg);
        SuiteReport rep;
        if (criterion) {
            rep.results.push_back(suite.run(criterion));
            rep.pass = rep.results.back().pass;
        } else {
            rep = suite.run_all();
        }
        std::string text;
        for (const auto& r : rep.results) text += criterion_line(r) + "\n";
        if (lines) *lines = dup(text);
        if (report_json) *report_json = dup(suite_report_to_json(rep, cfg, true));
        if (pass) *pass = rep.pass ? 1 : 0;
    });
}

qvd_status qvd_corpus_write(qvd_context* ctx, int n_min, int n_max, const char* root) {
    return guard([&] {
        need(ctx, "context");
        need(root, "root");
        QGrid g(n_min, n_max);
        auto dir = std::filesystem::path(root) / corpus_dir_name(ctx->p);
        std::filesystem::create_directories(dir);
        write_corpus(dir.string(), make_corpus(*ctx->L, g), ctx->p);
        auto index = std::filesystem::path(root) / "index.json";
        nlohmann::json j = nlohmann::json::object();
        if (std::filesystem::exists(index)) j = nlohmann::json::parse(read_file(index.string()));
        nlohmann::json entry = {{"q", ctx->p.q_text}, {"nu", ctx->p.nu_text}, {"digits", ctx->p.precision_digits},
                                {"n_min", n_min}, {"n_max", n_max}};
        j["corpora"][corpus_dir_name(ctx->p)] = entry;
        write_file(index.string(), j.dump(1) + "\n");
    });
}

}  // extern "C"

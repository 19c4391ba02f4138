#include "cli_config.hpp"

#include "qvd/qvd.h"

#include <CLI11.hpp>

#include <algorithm>

namespace qcli {

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig c;
    CLI::App app{"q-Bessel Fourier transforms and variation-diminishing kernels", "qcli"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--q", c.q, "base q in (0,1), exact decimal");
    app.add_option("--nu", c.nu, "order nu > -1, exact decimal");
    app.add_option("--digits", c.digits, "working decimal digits")->check(CLI::Range(30, 2000));
    app.add_option("--tol", c.tol, "tolerance");
    auto* nmin = app.add_option("--nmin", c.n_min, "window start");
    auto* nmax = app.add_option("--nmax", c.n_max, "window end");
    app.add_option("--out", c.out, "output path (stdout when absent)");
    app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--plan-cache", c.plan_cache, "directory of cached transform plans");

    auto* eval = app.add_subcommand("eval", "evaluate jnu, inu, knu, ga or gauss at one point");
    eval->add_option("function", c.function)->required()->check(
        CLI::IsMember({"jnu", "inu", "knu", "ga", "gauss"}));
    eval->add_option("--x", c.x, "decimal or q^N")->required();
    eval->add_option("--a", c.param, "scale a for ga");
    eval->add_option("--c", c.param, "parameter c for gauss");

    auto* tr = app.add_subcommand("transform", "q-Bessel Fourier transform of a grid function");
    tr->add_option("input", c.inputs)->required()->expected(1);
    tr->add_option("--decay", c.decay, "decay class when the file has none");
    tr->add_option("--spectral", c.spectral, "spectral class when the file has none");

    auto* cv = app.add_subcommand("convolve", "q-convolution of two grid functions");
    cv->add_option("inputs", c.inputs)->required()->expected(2);
    cv->add_option("--decay", c.decay, "decay class for inputs that have none");

    std::string action;
    auto* kn = app.add_subcommand("kernel", "build a composite kernel");
    kn->add_option("action", action)->check(CLI::IsMember({"build"}));
    kn->add_option("--spec", c.spec, "kernel spec JSON")->required();
    kn->add_option("--kernel-out", c.kernel_out, "write the kernel grid function here");

    auto* vf = app.add_subcommand("verify", "acceptance suite, or a kernel against a corpus");
    vf->add_option("--corpus", c.corpus, "corpus root directory");
    vf->add_option("--kernel", c.kernel, "kernel grid function to check");
    vf->add_option("--zero-tol", c.zero_tol, "sign threshold");
    vf->add_option("--criterion", c.criterion, "run one criterion")->check(CLI::Range(1, 10));

    app.add_subcommand("report", "derived constants as JSON");
    app.add_subcommand("corpus", "write the test corpus for this q and nu under --out");

    const std::string usage = app.help();
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw UsageError("", app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what(), usage);
    }

    const std::pair<CLI::App*, Command> map[] = {
        {eval, Command::Eval},   {tr, Command::Transform}, {cv, Command::Convolve}, {kn, Command::Kernel},
        {vf, Command::Verify}};
    c.command = Command::Report;
    for (const auto& [sub, cmd] : map)
        if (sub->parsed()) c.command = cmd;
    if (app.get_subcommand("corpus")->parsed()) c.command = Command::Corpus;
    c.window_given = nmin->count() > 0 || nmax->count() > 0;

    if (qvd_validate_params(c.q.c_str(), c.nu.c_str(), c.digits, c.tol.c_str()) != QVD_OK)
        throw UsageError(qvd_last_error(), usage);
    if (c.n_min > c.n_max) throw UsageError("--nmin must not exceed --nmax", usage);
    if (c.command == Command::Eval && (c.function == "ga" || c.function == "gauss") && c.param.empty())
        throw UsageError(c.function + " needs " + (c.function == "ga" ? "--a" : "--c"), usage);
    if (c.command == Command::Corpus && c.out.empty()) throw UsageError("corpus needs --out DIR", usage);
    for (const auto* cls : {&c.decay, &c.spectral})
        if (!cls->empty() && *cls != "rapid" && *cls != "integrable" && *cls != "bounded" && *cls != "unknown")
            throw UsageError("unknown decay class " + *cls, usage);
    return c;
}

}  // namespace qcli

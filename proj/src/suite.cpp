#include "qvd/suite.hpp"

#include "qvd/bessel.hpp"
#include "qvd/corpus.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <sstream>

namespace qvd {

struct Suite::Context {
    QParams p;
    LatticePtr L;
    TransformPlan plan;
    std::vector<NamedFunction> corpus;
    std::map<int, Real> K;
    std::map<std::string, KernelReport> composites;

    const GridFunction& item(const std::string& name) const {
        for (const auto& nf : corpus)
            if (nf.name == name) return nf.f;
        fail(ErrorCode::InvalidArgument, "corpus has no member " + name);
    }
    const Real& k(int n) {
        auto it = K.find(n);
        if (it == K.end()) it = K.emplace(n, k_nu(n, *L)).first;
        return it->second;
    }
    const KernelReport& composite(const std::string& key, const KernelSpec& spec, bool chain) {
        auto it = composites.find(key);
        if (it != composites.end()) return it->second;
        KernelOptions opt;
        opt.chain = chain;
        return composites.emplace(key, composite_kernel(spec, plan, opt)).first->second;
    }
};

Suite::Suite(SuiteConfig cfg) : cfg_(std::move(cfg)) {}
Suite::~Suite() = default;

Suite::Context& Suite::context(const std::string& nu) {
    auto it = ctx_.find(nu);
    if (it != ctx_.end()) return *it->second;
    auto c = std::make_unique<Context>();
    c->p = QParams::make(cfg_.q, nu, cfg_.digits, cfg_.tol);
    c->L = make_lattice(c->p);
    c->plan = build_plan(c->L, cfg_.window, cfg_.window);
    if (cfg_.corpus_root.empty()) {
        c->corpus = make_corpus(*c->L, cfg_.window);
    } else {
        auto dir = std::filesystem::path(cfg_.corpus_root) / corpus_dir_name(c->p);
        c->corpus = read_corpus(dir.string(), c->p);
        for (const auto& nf : c->corpus)
            if (!(nf.f.grid == cfg_.window)) fail(ErrorCode::Window, "corpus window differs from the suite window");
    }
    return *ctx_.emplace(nu, std::move(c)).first->second;
}

namespace {

double to_d(const Real& v) { return static_cast<double>(v); }

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

int lo_interior(const QGrid& g) { return g.n_min + 8; }
int hi_interior(const QGrid& g) { return g.n_max - 8; }

const char* kNames[kCriteria] = {
    "inversion",       "plancherel",          "eigen-equations", "macdonald positivity and lorentzian pair",
    "wronskian",       "convolution theorem", "variation diminishing", "chain monotonicity",
    "series round trip", "approximate identity"};

}  // namespace

CriterionResult Suite::run(int id) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = dispatch(id);
    } catch (const Error& e) {
        r.id = id;
        r.name = id >= 1 && id <= kCriteria ? kNames[id - 1] : "unknown";
        r.pass = false;
        r.detail = std::string(error_name(e.code())) + ": " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (id == 1 && r.seconds >= 60) {
        r.pass = false;
        r.detail += "; runtime over 60 s";
    }
    return r;
}

SuiteReport Suite::run_all() {
    SuiteReport rep;
    for (int id = 1; id <= kCriteria; ++id) {
        rep.results.push_back(run(id));
        if (!rep.results.back().pass) rep.pass = false;
    }
    return rep;
}

CriterionResult Suite::dispatch(int id) {
    if (id < 1 || id > kCriteria) fail(ErrorCode::InvalidArgument, "no such criterion");
    CriterionResult r;
    r.id = id;
    r.name = kNames[id - 1];
    std::ostringstream detail;
    double worst = 0;
    bool ok = true;

    switch (id) {
    case 1: {
        r.threshold = 1e-25;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            PrecisionScope scope(c.p.precision_digits);
            double nu_worst = 0;
            for (const auto& nf : c.corpus) {
                GridFunction FF = fourier(fourier(nf.f, c.plan), c.plan);
                Real e = 0;
                for (std::size_t i = 0; i < FF.values.size(); ++i) e = std::max(e, Real(abs(FF.values[i] - nf.f.values[i])));
                double rel = to_d(e / nf.f.sup());
                nu_worst = std::max(nu_worst, rel);
            }
            detail << "nu=" << nu << " " << sci(nu_worst) << "; ";
            worst = std::max(worst, nu_worst);
        }
        ok = worst <= r.threshold;
        break;
    }
    case 2: {
        r.threshold = 1e-25;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            PrecisionScope scope(c.p.precision_digits);
            double nu_worst = 0;
            int count = 0;
            for (const auto& nf : c.corpus) {
                if (nf.f.decay != DecayClass::Rapid || nf.f.spectral != DecayClass::Rapid) continue;
                ++count;
                Real a = norm(nf.f, {2, true}, c.p);
                Real b = norm(fourier(nf.f, c.plan), {2, true}, c.p);
                nu_worst = std::max(nu_worst, to_d(abs(b - a) / a));
            }
            detail << "nu=" << nu << " " << sci(nu_worst) << " over " << count << "; ";
            worst = std::max(worst, nu_worst);
        }
        ok = worst <= r.threshold;
        break;
    }
    case 3: {
        r.threshold = 1e-25;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            const int W = c.p.precision_digits;
            PrecisionScope scope(W);
            const QGrid& g = cfg_.window;
            Real q2nu = pow(c.p.q, 2 * c.p.nu);
            double nu_worst = 0;
            for (int m : {2, 0, -2}) {
                Real a2 = c.L->qpow(2 * m, W);
                GridFunction jf = sample(g, [&](int n) { return c.L->j(m + n, W); });
                Real wa = c.L->weight(m, W);
                GridFunction ga = sample(g, [&](int n) { return wa * c.k(m + n); });
                GridFunction dj = q_bessel_operator(jf, c.p), dg = q_bessel_operator(ga, c.p);
                for (int n = lo_interior(g); n <= hi_interior(g); ++n) {
                    Real x2i = c.L->qpow(-2 * n, W);
                    auto spread = [&](const GridFunction& f) {
                        return x2i * (abs(f.at(n - 1)) + (1 + q2nu) * abs(f.at(n)) + q2nu * abs(f.at(n + 1)));
                    };
                    Real rj = abs(dj.at(n) + a2 * jf.at(n)) / (spread(jf) + a2 * abs(jf.at(n)));
                    Real rg = abs(ga.at(n) - dg.at(n) / a2) / (abs(ga.at(n)) + spread(ga) / a2);
                    nu_worst = std::max({nu_worst, to_d(rj), to_d(rg)});
                }
            }
            detail << "nu=" << nu << " " << sci(nu_worst) << "; ";
            worst = std::max(worst, nu_worst);
        }
        ok = worst <= r.threshold;
        break;
    }
    case 4: {
        r.threshold = 1e-20;
        int nonpos = 0;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            const int W = c.p.precision_digits;
            PrecisionScope scope(W);
            const QGrid& g = cfg_.window;
            int bad = 0;
            for (int n = g.n_min; n <= g.n_max; ++n)
                if (!(c.k(n) > 0)) ++bad;
            double nu_worst = 0;
            for (int m : {2, 0, -2}) {
                Real wa = c.L->weight(m, W), a2 = c.L->qpow(2 * m, W);
                GridFunction ga = sample(g, [&](int n) { return wa * c.k(m + n); }, DecayClass::Rapid,
                                         DecayClass::Integrable);
                GridFunction F = fourier(ga, c.plan);
                for (int n = lo_interior(g); n <= hi_interior(g); ++n) {
                    Real lor = 1 / (1 + c.L->qpow(2 * n, W) / a2);
                    nu_worst = std::max(nu_worst, to_d(abs(F.at(n) - lor)));
                }
            }
            nonpos += bad;
            detail << "nu=" << nu << " nonpositive K " << bad << ", lorentz " << sci(nu_worst) << "; ";
            worst = std::max(worst, nu_worst);
        }
        ok = nonpos == 0 && worst <= r.threshold;
        break;
    }
    case 5: {
        r.threshold = 1e-20;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            WronskianReport w = wronskian(*c.L, cfg_.window);
            double s = to_d(w.spread);
            detail << "nu=" << nu << " d=" << to_decimal(w.mean, 12) << " spread " << sci(s) << "; ";
            if (!(w.mean > 0)) ok = false;
            worst = std::max(worst, s);
        }
        ok = ok && worst <= r.threshold;
        break;
    }
    case 6: {
        r.threshold = 1e-20;
        const std::pair<const char*, const char*> pairs[] = {
            {"step1", "gauss_0.5"}, {"g_1", "step2"},     {"gauss_2", "oscillator"},
            {"plateau", "g_q"},     {"step3", "gauss_dipole"}, {"g_1", "gauss_0.5"}};
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            PrecisionScope scope(c.p.precision_digits);
            double nu_worst = 0;
            for (const auto& [a, b] : pairs) {
                const GridFunction& f = c.item(a);
                const GridFunction& g = c.item(b);
                GridFunction h = convolve_definitional(f, g, c.plan);
                bool rapid = f.decay == DecayClass::Rapid && g.decay == DecayClass::Rapid;
                h.decay = rapid ? DecayClass::Rapid : DecayClass::Integrable;
                h.spectral = product_class(f.spectral, g.spectral);
                GridFunction Fh = fourier(h, c.plan);
                GridFunction Ff = fourier(f, c.plan), Fg = fourier(g, c.plan);
                Real scale = 0, e = 0;
                for (int n = lo_interior(cfg_.window); n <= hi_interior(cfg_.window); ++n) {
                    Real pr = Ff.at(n) * Fg.at(n);
                    scale = std::max(scale, Real(abs(pr)));
                    e = std::max(e, Real(abs(Fh.at(n) - pr)));
                }
                nu_worst = std::max(nu_worst, to_d(e / scale));
            }
            detail << "nu=" << nu << " " << sci(nu_worst) << "; ";
            worst = std::max(worst, nu_worst);
        }
        ok = worst <= r.threshold;
        break;
    }
    case 7: {
        r.threshold = 0;
        int violations = 0;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            PrecisionScope scope(c.p.precision_digits);
            Real zt("1e-30");
            std::vector<std::pair<std::string, GridFunction>> kernels;
            kernels.emplace_back("g_q", c.item("g_q"));
            kernels.emplace_back("g_1", c.item("g_1"));
            kernels.emplace_back("h_0.5", c.item("gauss_0.5"));
            kernels.emplace_back("G(0;1,2)",
                                 c.composite("0|1,2", KernelSpec::make(0, {Real(1), Real(2)}), false).kernel);
            kernels.emplace_back("G(0.25;1)",
                                 c.composite("0.25|1", KernelSpec::make(Real("0.25"), {Real(1)}), false).kernel);
            int nu_v = 0;
            for (const auto& [name, K] : kernels) {
                VdReport vr = vd_check(K, c.corpus, c.plan, zt);
                nu_v += vr.violations;
                for (const auto& e : vr.entries)
                    if (!e.pass) detail << "nu=" << nu << " " << name << "*" << e.name << " V " << e.v_kf << ">" << e.v_f << "; ";
            }
            detail << "nu=" << nu << " violations " << nu_v << "; ";
            violations += nu_v;
        }
        worst = violations;
        ok = violations == 0;
        break;
    }
    case 8: {
        r.threshold = -1e-25;
        worst = 0;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            PrecisionScope scope(c.p.precision_digits);
            const KernelReport& kr =
                c.composite("0|1,2,4", KernelSpec::make(0, {Real(1), Real(2), Real(4)}), true);
            detail << "nu=" << nu;
            for (const auto& gap : kr.chain) {
                if (!gap.defined) {
                    detail << " G" << gap.m + 1 << "-G" << gap.m << " undefined";
                    continue;
                }
                double gval = to_d(gap.min_gap);
                std::string hi = gap.m + 1 == 3 ? "G" : "G" + std::to_string(gap.m + 1);
                detail << " min(" << hi << "-G" << gap.m << ")=" << sci(gval) << " at n=" << gap.argmin;
                worst = std::min(worst, gval);
            }
            detail << "; ";
        }
        ok = worst >= r.threshold;
        break;
    }
    case 9: {
        r.threshold = 1e-10;
        bool roots_ok = true;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            PrecisionScope scope(c.p.precision_digits);
            const KernelReport& kr = c.composite("0|1,2", KernelSpec::make(0, {Real(1), Real(2)}), false);
            EvenSeries w = omega_series(kr.kernel, c.plan, 4);
            const Real expect[3] = {Real(1), Real("1.25"), Real("0.25")};
            double nu_worst = 0;
            for (int i = 0; i < 3; ++i) nu_worst = std::max(nu_worst, to_d(abs(w.coeffs[i] - expect[i]) / expect[i]));
            detail << "nu=" << nu << " w rel " << sci(nu_worst);
            for (int n = 1; n <= 2; ++n) {
                RootsReport rr = real_roots_check(Qn_polynomial(w, n, c.p), Real("1e-20"));
                detail << " Q" << n << (rr.all_real ? " real" : " NOT real");
                roots_ok = roots_ok && rr.all_real;
            }
            detail << "; ";
            worst = std::max(worst, nu_worst);
        }
        ok = roots_ok && worst <= r.threshold;
        break;
    }
    case 10: {
        r.threshold = 0;
        for (const auto& nu : cfg_.nus) {
            Context& c = context(nu);
            PrecisionScope scope(c.p.precision_digits);
            std::vector<Real> seq = approx_identity_run(c.item("g_1"), c.plan, {2, 4, 6, 8});
            detail << "nu=" << nu;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                detail << " " << sci(to_d(seq[i]));
                if (i > 0 && !(seq[i] < seq[i - 1])) ok = false;
            }
            detail << "; ";
        }
        worst = ok ? 0 : 1;
        break;
    }
    }
    r.metric = worst;
    r.pass = ok;
    r.detail = detail.str();
    if (!r.detail.empty() && r.detail.size() >= 2 && r.detail.substr(r.detail.size() - 2) == "; ")
        r.detail.resize(r.detail.size() - 2);
    return r;
}

std::string criterion_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail;
    return os.str();
}

std::string suite_report_to_json(const SuiteReport& r, const SuiteConfig& cfg, bool with_meta) {
    nlohmann::json j;
    j["config"] = {{"q", cfg.q},        {"nu", cfg.nus},
                   {"digits", cfg.digits}, {"tol", cfg.tol},
                   {"n_min", cfg.window.n_min}, {"n_max", cfg.window.n_max},
                   {"corpus", cfg.corpus_root.empty() ? "generated" : cfg.corpus_root}};
    nlohmann::json list = nlohmann::json::array();
    int passed = 0;
    for (const auto& c : r.results) {
        list.push_back({{"id", c.id},
                        {"name", c.name},
                        {"pass", c.pass},
                        {"metric", sci(c.metric)},
                        {"threshold", sci(c.threshold)},
                        {"detail", c.detail}});
        if (c.pass) ++passed;
    }
    j["criteria"] = list;
    j["summary"] = {{"pass", r.pass}, {"passed", passed}, {"failed", static_cast<int>(r.results.size()) - passed}};
    nlohmann::json out;
    out["report"] = j;
    if (with_meta) {
        nlohmann::json meta;
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        meta["generated_at"] = buf;
        nlohmann::json secs = nlohmann::json::object();
        for (const auto& c : r.results) secs[std::to_string(c.id)] = c.seconds;
        meta["seconds"] = secs;
        out["metadata"] = meta;
    }
    return out.dump(1) + "\n";
}

}  // namespace qvd

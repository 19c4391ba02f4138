#include "qvd/corpus.hpp"

#include "qvd/bessel.hpp"
#include "qvd/io.hpp"
#include "qvd/kernels.hpp"

#include <json.hpp>

#include <filesystem>

namespace qvd {

namespace {

struct Block {
    int lo, hi;
    const char* value;
};

NamedFunction steps(const char* name, const QGrid& g, std::initializer_list<Block> blocks, int v, int digits) {
    NamedFunction nf;
    nf.name = name;
    nf.f = GridFunction(g, DecayClass::Rapid, DecayClass::Rapid);
    for (const auto& b : blocks) {
        if (!g.contains(b.lo) || !g.contains(b.hi)) fail(ErrorCode::Window, "corpus window too small");
        Real val = parse_decimal(b.value, digits);
        for (int n = b.lo; n <= b.hi; ++n) nf.f.at(n) = val;
    }
    nf.declared_v = v;
    return nf;
}

}  // namespace

std::vector<NamedFunction> make_corpus(const Lattice& L, const QGrid& g) {
    const QParams& p = L.params();
    const int W = p.precision_digits;
    PrecisionScope scope(W);
    std::vector<NamedFunction> out;
    out.push_back(steps("plateau", g, {{-16, 8, "1"}}, 0, W));
    out.push_back(steps("plateau_neg", g, {{-12, 4, "-2.5"}}, 0, W));
    out.push_back(steps("step1", g, {{-16, -5, "1"}, {-4, 8, "-1"}}, 1, W));
    out.push_back(steps("step2", g, {{-16, -9, "1"}, {-8, -1, "-2"}, {0, 8, "1"}}, 2, W));
    out.push_back(steps("step3", g, {{-16, -11, "1"}, {-10, -5, "-1"}, {-4, 1, "1"}, {2, 8, "-1"}}, 3, W));
    out.push_back(steps("step3_ramp", g, {{-16, -12, "3"}, {-11, -3, "-1"}, {-2, 3, "2"}, {4, 10, "-0.5"}}, 3, W));

    NamedFunction g1{"g_1", sample(g, [&](int n) { return k_nu(n, L); }, DecayClass::Rapid, DecayClass::Integrable), 0};
    out.push_back(g1);
    // g_q(q^n) = q^{2nu+2} K(q^{n+1})
    Real wq = L.weight(1, W);
    out.push_back({"g_q", sample(g, [&](int n) { return wq * k_nu(n + 1, L); }, DecayClass::Rapid,
                                 DecayClass::Integrable), 0});

    GridFunction h05 = gauss_samples(g, Real("0.5"), p);
    GridFunction h2 = gauss_samples(g, Real(2), p);
    out.push_back({"gauss_0.5", h05, 0});
    out.push_back({"gauss_2", h2, 0});

    NamedFunction dip{"gauss_dipole", GridFunction(g, DecayClass::Rapid, DecayClass::Rapid), 1};
    for (int n = g.n_min; n <= g.n_max; ++n) dip.f.at(n) = h05.at(n) - Real("0.5") * h2.at(n);
    out.push_back(dip);

    // j_nu(q^{-3} x) h_2(x)
    NamedFunction osc{"oscillator", GridFunction(g, DecayClass::Rapid, DecayClass::Rapid), -1};
    for (int n = g.n_min; n <= g.n_max; ++n) osc.f.at(n) = L.j(n - 3, W) * h2.at(n);
    osc.declared_v = count_sign_changes(osc.f, Real("1e-30"));
    out.push_back(osc);
    return out;
}

std::string corpus_dir_name(const QParams& p) {
    // nu_m0.5 style names
    std::string s = p.nu.str(6, std::ios_base::fixed);
    while (s.size() > 1 && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (!s.empty() && s[0] == '-') s[0] = 'm';
    return "nu_" + s;
}

void write_corpus(const std::string& dir, const std::vector<NamedFunction>& items, const QParams& p) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    nlohmann::json m;
    m["q"] = p.q_text;
    m["nu"] = p.nu_text;
    m["digits"] = p.precision_digits;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& it : items) {
        std::string file = it.name + ".json";
        write_file((fs::path(dir) / file).string(), gridfn_to_json(it.f, p));
        list.push_back({{"name", it.name},
                        {"file", file},
                        {"declared_v", it.declared_v},
                        {"decay_class", decay_name(it.f.decay)},
                        {"spectral_class", decay_name(it.f.spectral)}});
    }
    if (!items.empty()) {
        m["n_min"] = items.front().f.grid.n_min;
        m["n_max"] = items.front().f.grid.n_max;
    }
    m["functions"] = list;
    write_file((fs::path(dir) / "manifest.json").string(), m.dump(1) + "\n");
}

std::vector<NamedFunction> read_corpus(const std::string& dir, const QParams& p) {
    namespace fs = std::filesystem;
    nlohmann::json m;
    try {
        m = nlohmann::json::parse(read_file((fs::path(dir) / "manifest.json").string()));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("bad corpus manifest: ") + e.what());
    }
    const int d = p.precision_digits;
    if (!m.contains("functions")) fail(ErrorCode::Parse, "corpus manifest lists no functions");
    std::vector<NamedFunction> out;
    for (const auto& e : m["functions"]) {
        GridFile gf = gridfn_from_json(read_file((fs::path(dir) / e.at("file").get<std::string>()).string()), d);
        if (parse_decimal(gf.q, d) != p.q || parse_decimal(gf.nu, d) != p.nu)
            fail(ErrorCode::InvalidArgument, "corpus file " + e.at("file").get<std::string>() +
                                                 " was generated for different q or nu");
        NamedFunction nf;
        nf.name = e.at("name").get<std::string>();
        nf.f = gf.f;
        nf.f.decay = decay_from_name(e.at("decay_class").get<std::string>());
        nf.f.spectral = decay_from_name(e.at("spectral_class").get<std::string>());
        nf.declared_v = e.at("declared_v").get<int>();
        out.push_back(std::move(nf));
    }
    return out;
}

}  // namespace qvd

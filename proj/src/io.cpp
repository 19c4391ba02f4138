#include "qvd/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qvd {

using nlohmann::json;

std::string dec(const Real& v, int digits) { return to_decimal(v, digits + 5); }

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorCode::Parse, std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorCode::Parse, std::string("bad value for '") + key + "'");
    }
}

}  // namespace

std::string gridfn_to_json(const GridFunction& f, const QParams& p) {
    json j;
    j["q"] = p.q_text;
    j["nu"] = p.nu_text;
    j["n_min"] = f.grid.n_min;
    j["n_max"] = f.grid.n_max;
    json vals = json::array();
    for (const auto& v : f.values) vals.push_back(dec(v, p.precision_digits));
    j["values"] = vals;
    if (f.decay != DecayClass::Unknown) j["decay_class"] = decay_name(f.decay);
    if (f.spectral != DecayClass::Unknown) j["spectral_class"] = decay_name(f.spectral);
    return j.dump(1) + "\n";
}

GridFile gridfn_from_json(const std::string& text, int digits) {
    json j = parse_json(text);
    GridFile g;
    g.q = field<std::string>(j, "q");
    g.nu = field<std::string>(j, "nu");
    QGrid grid(field<int>(j, "n_min"), field<int>(j, "n_max"));
    auto vals = field<std::vector<std::string>>(j, "values");
    if (vals.size() != static_cast<std::size_t>(grid.size()))
        fail(ErrorCode::Parse, "values length does not match n_max - n_min + 1");
    g.f = GridFunction(grid);
    for (std::size_t i = 0; i < vals.size(); ++i) g.f.values[i] = parse_decimal(vals[i], digits);
    if (j.contains("decay_class")) g.f.decay = decay_from_name(field<std::string>(j, "decay_class"));
    if (j.contains("spectral_class")) g.f.spectral = decay_from_name(field<std::string>(j, "spectral_class"));
    g.f.check_finite();
    return g;
}

std::string gridfn_to_csv(const GridFunction& f, const QParams& p) {
    std::ostringstream os;
    os << "n,x,value\n";
    PrecisionScope scope(p.precision_digits);
    for (int n = f.grid.n_min; n <= f.grid.n_max; ++n)
        os << n << ',' << dec(qpow(p.q, n), p.precision_digits) << ',' << dec(f.at(n), p.precision_digits) << '\n';
    return os.str();
}

KernelSpec kernel_spec_from_json(const std::string& text, int digits) {
    json j = parse_json(text);
    Real c = parse_decimal(field<std::string>(j, "c"), digits);
    std::vector<Real> zeros;
    for (const auto& z : field<std::vector<std::string>>(j, "zeros")) zeros.push_back(parse_decimal(z, digits));
    return KernelSpec::make(c, std::move(zeros));
}

std::string kernel_report_to_json(const KernelSpec& spec, const KernelReport& r, const QParams& p) {
    const int d = p.precision_digits;
    json j;
    j["c"] = dec(spec.c, d);
    json z = json::array();
    for (const auto& a : spec.zeros) z.push_back(dec(a, d));
    j["zeros"] = z;
    j["mass"] = dec(r.mass, d);
    j["min_value"] = dec(r.min_value, d);
    j["monotone_chain_ok"] = r.monotone_chain_ok;
    json chain = json::array();
    for (const auto& g : r.chain) {
        json e;
        e["prefix"] = g.m;
        e["defined"] = g.defined;
        if (g.defined) {
            e["min_gap"] = dec(g.min_gap, d);
            e["argmin_n"] = g.argmin;
        }
        chain.push_back(e);
    }
    j["chain"] = chain;
    j["n_min"] = r.kernel.grid.n_min;
    j["n_max"] = r.kernel.grid.n_max;
    return j.dump(1) + "\n";
}

std::string plan_to_json(const TransformPlan& plan) {
    const int d = plan.params.precision_digits;
    json j;
    j["format"] = "qvd-plan";
    j["version"] = 1;
    j["q"] = plan.params.q_text;
    j["nu"] = plan.params.nu_text;
    j["digits"] = d;
    j["in"] = {plan.in_grid.n_min, plan.in_grid.n_max};
    j["out"] = {plan.out_grid.n_min, plan.out_grid.n_max};
    json m = json::array();
    for (const auto& v : plan.matrix) m.push_back(dec(v, d));
    j["matrix"] = m;
    json ts = json::array(), tl = json::array();
    for (const auto& v : plan.tail_small) ts.push_back(dec(v, d));
    for (const auto& row : plan.tail_large) tl.push_back({dec(row[0], d), dec(row[1], d), dec(row[2], d)});
    j["tail_small"] = ts;
    j["tail_large"] = tl;
    return j.dump() + "\n";
}

TransformPlan plan_from_json(const std::string& text, LatticePtr L) {
    json j = parse_json(text);
    if (field<std::string>(j, "format") != "qvd-plan" || field<int>(j, "version") != 1)
        fail(ErrorCode::Parse, "not a version 1 plan file");
    const QParams& p = L->params();
    const int d = p.precision_digits;
    if (field<int>(j, "digits") != d || parse_decimal(field<std::string>(j, "q"), d) != p.q ||
        parse_decimal(field<std::string>(j, "nu"), d) != p.nu)
        fail(ErrorCode::InvalidArgument, "plan file was built for different parameters");
    auto in = field<std::vector<int>>(j, "in");
    auto out = field<std::vector<int>>(j, "out");
    if (in.size() != 2 || out.size() != 2) fail(ErrorCode::Parse, "bad plan grids");
    TransformPlan plan;
    plan.params = p;
    plan.lattice = L;
    plan.in_grid = QGrid(in[0], in[1]);
    plan.out_grid = QGrid(out[0], out[1]);
    auto m = field<std::vector<std::string>>(j, "matrix");
    auto ts = field<std::vector<std::string>>(j, "tail_small");
    auto tl = field<std::vector<std::vector<std::string>>>(j, "tail_large");
    std::size_t rows = plan.out_grid.size(), cols = plan.in_grid.size();
    if (m.size() != rows * cols || ts.size() != rows || tl.size() != rows)
        fail(ErrorCode::Parse, "plan table sizes do not match the grids");
    for (const auto& s : m) plan.matrix.push_back(parse_decimal(s, d));
    for (const auto& s : ts) plan.tail_small.push_back(parse_decimal(s, d));
    for (const auto& row : tl) {
        if (row.size() != 3) fail(ErrorCode::Parse, "bad tail_large row");
        plan.tail_large.push_back({parse_decimal(row[0], d), parse_decimal(row[1], d), parse_decimal(row[2], d)});
    }
    return plan;
}

std::string plan_cache_name(const QParams& p, const QGrid& in, const QGrid& out) {
    std::ostringstream os;
    os << "plan_q" << p.q_text << "_nu" << p.nu_text << "_in" << in.n_min << '_' << in.n_max << "_out"
       << out.n_min << '_' << out.n_max << "_d" << p.precision_digits << ".json";
    return os.str();
}

std::string vd_report_to_json(const VdReport& r) {
    json j;
    json per = json::object();
    for (const auto& e : r.entries) {
        json o;
        o["V_f"] = e.v_f;
        o["V_Kf"] = e.v_kf;
        o["pass"] = e.pass;
        if (!e.pass) {
            o["pattern_f"] = e.pattern_f.signs;
            o["pattern_Kf"] = e.pattern_kf.signs;
        }
        per[e.name] = o;
    }
    j["per_function"] = per;
    j["summary"] = {{"functions", r.entries.size()}, {"violations", r.violations}, {"pass", r.pass}};
    return j.dump(1) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write " + path);
    out << text;
    if (!out) fail(ErrorCode::Io, "write failed for " + path);
}

}  // namespace qvd

#include "qvd/real.hpp"
#include "qvd/error.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace qvd {

PrecisionScope::PrecisionScope(int digits) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real promote(const Real& v, int digits) {
    Real r(v);
    if (r.precision() < static_cast<unsigned>(digits)) r.precision(static_cast<unsigned>(digits));
    return r;
}

Real with_digits(const Real& v, int digits) {
    Real r(v);
    r.precision(static_cast<unsigned>(digits));
    return r;
}

namespace {

bool well_formed(std::string_view s) {
    std::size_t i = 0;
    auto digits = [&] {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return i - start;
    };
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t lead = digits();
    std::size_t frac = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        frac = digits();
    }
    if (lead + frac == 0) return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        if (digits() == 0) return false;
    }
    return i == s.size();
}

}  // namespace

Real parse_decimal(std::string_view text, int digits) {
    if (!well_formed(text)) fail(ErrorCode::Parse, "malformed decimal '" + std::string(text) + "'");
    PrecisionScope scope(digits);
    return Real(std::string(text));
}

std::string to_decimal(const Real& v, int digits) {
    if (v == 0) return "0";
    return v.str(digits, std::ios_base::scientific);
}

double log10_abs(const Real& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v.backend().data(), MPFR_RNDN);
    return std::log10(std::fabs(m)) + static_cast<double>(e) * std::log10(2.0);
}

Real ten_pow(int e, int digits) {
    PrecisionScope scope(digits);
    Real ten(10);
    return pow(ten, e);
}

}  // namespace qvd

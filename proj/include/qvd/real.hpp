#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace qvd {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Sets the default precision for newly constructed Reals, restores on exit.
// Arithmetic results carry the max precision of their operands, so values
// arriving from outside must be widened with promote().
class PrecisionScope {
public:
    explicit PrecisionScope(int digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

// exact copy of v widened to at least `digits`
Real promote(const Real& v, int digits);
// copy rounded (or widened) to exactly `digits`
Real with_digits(const Real& v, int digits);

Real parse_decimal(std::string_view text, int digits);
std::string to_decimal(const Real& v, int digits);

// log10|v| in double; -inf for zero
double log10_abs(const Real& v);
Real ten_pow(int e, int digits);

}  // namespace qvd

#pragma once

#include "qvd/vdk.hpp"

#include <string>

namespace qvd {

// Twelve test functions: compact plateaus and step patterns with 1-3 flips,
// g_1 and g_q samples, two q-Gauss samples, a signed Gauss difference and a
// Gauss-damped j_nu oscillator.
std::vector<NamedFunction> make_corpus(const Lattice& L, const QGrid& g);

std::string corpus_dir_name(const QParams& p);
void write_corpus(const std::string& dir, const std::vector<NamedFunction>& items, const QParams& p);
// dir holds manifest.json with "functions"; checks q, nu and the window
std::vector<NamedFunction> read_corpus(const std::string& dir, const QParams& p);

}  // namespace qvd

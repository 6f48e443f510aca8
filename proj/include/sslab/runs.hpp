#pragma once

#include <string>
#include <vector>

#include "sslab/numkernel.hpp"

namespace sslab::runs {

struct RunOutput {
  std::string json;
  std::string csv;  // empty when the command has no tabular projection
  bool pass = true;
};

// command: superosc | bernstein | regions.lemniscate | regions.wa | kantorovich |
//          supershift.check | supershift.convolve | supershift.primitive | supershift.multiply | evolve
RunOutput run_command(const std::string& command, const std::string& config_json);

// "start:end:step" (end included when (end-start)/step is integral within 1e-12), a single value,
// or a comma-separated list of values.
std::vector<double> parse_range(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
// "re,im" or "re"
std::complex<double> parse_complex_pair(const std::string& text);
numkernel::PrecisionPolicy parse_precision(const std::string& text, int guard_bits = 64);

std::string format_double(double v);

}  // namespace sslab::runs

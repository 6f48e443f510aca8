#pragma once

#include <stdexcept>
#include <string>

namespace sslab {

enum class Errc {
  domain,
  precision,
  singular_time,
  ambiguous,
  glue,
  degenerate,
  parse,
  invalid_argument,
  overflow,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

class PrecisionError : public Error {
 public:
  PrecisionError(int deficit_bits, const std::string& msg)
      : Error(Errc::precision, msg + " (deficit " + std::to_string(deficit_bits) + " bits)"),
        deficit_(deficit_bits) {}
  int deficit_bits() const { return deficit_; }

 private:
  int deficit_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace sslab

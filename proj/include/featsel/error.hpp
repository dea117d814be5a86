#pragma once

#include <stdexcept>
#include <string>

namespace featsel {

// Stable error classes. The CLI prints the code name on the diagnostic
// stream, so the enum order and names are part of the tool's interface.
enum class errc {
  io,         // missing or unreadable file
  parse,      // malformed row or non-numeric value
  label,      // non-integer, negative, or out-of-range label
  schema,     // duplicate names, bad header, overlapping manifest prefixes
  align,      // mismatched label vectors or row counts
  index,      // out-of-range feature or sample index
  numeric,    // non-finite or non-positive weight
  contract,   // precondition violated by the caller
  empty,      // empty candidate set
  model,      // degenerate training set
  config,     // invalid run configuration
};

const char* errc_name(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace featsel

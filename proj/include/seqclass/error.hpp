#pragma once

#include <stdexcept>
#include <string>

namespace seqclass {

// Machine-readable failure categories, surfaced verbatim in CLI error JSON.
enum class Errc {
  bad_rule_spec,  // unparseable or ill-formed sequence rule specification
  domain,         // argument outside an operation's documented domain
  capability,     // a certified bound was requested that the rule cannot supply
  bad_config,     // inconsistent or unsupported experiment configuration
  io,             // file read/write failure
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace seqclass

#pragma once

#include <stdexcept>
#include <string>

namespace abshift {

enum class ErrorKind {
  Domain,              // argument outside the operation's domain
  Bracket,             // root finder called without a sign change
  DegenerateFit,       // regression with a single abscissa
  Length,              // finite word indexed past its end
  Resource,            // enumeration budget exceeded
  Precondition,        // structural precondition (U1-U3, N >= K+3, digit window)
  Construction,        // no parameter found in the bracket
  Verification,        // recomputed expansions disagree with the request
  InconsistentDigits,  // digit word is not the expansion it claims to be
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace abshift

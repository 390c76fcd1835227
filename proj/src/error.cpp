#include "abshift/error.hpp"

namespace abshift {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Bracket: return "bracket";
    case ErrorKind::DegenerateFit: return "degenerate-fit";
    case ErrorKind::Length: return "length";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Verification: return "verification";
    case ErrorKind::InconsistentDigits: return "inconsistent-digits";
  }
  return "unknown";
}

}  // namespace abshift

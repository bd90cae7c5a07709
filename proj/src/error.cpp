#include "lensfb/error.hpp"

namespace lensfb {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::singular_matrix: return "singular-matrix";
    case ErrorKind::infeasible_grid: return "infeasible-grid";
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::degenerate_codeword: return "degenerate-codeword";
    case ErrorKind::zero_channel: return "zero-channel";
    case ErrorKind::unsupported_codebook: return "unsupported-codebook";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::domain: return "domain";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace lensfb

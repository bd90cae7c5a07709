#pragma once

#include <stdexcept>
#include <string>

namespace lensfb {

enum class ErrorKind {
  invalid_dimension,
  singular_matrix,
  infeasible_grid,
  invalid_config,
  resource_limit,
  degenerate_codeword,
  zero_channel,
  unsupported_codebook,
  precondition,
  index_out_of_range,
  domain,
  io,
};

const char* to_string(ErrorKind kind);

// Every failure in the library surfaces as this exception; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double rcond)
      : Error(ErrorKind::singular_matrix, what), rcond_(rcond) {}

  /// Reciprocal 1-norm condition estimate of the Gram matrix that failed.
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

}  // namespace lensfb

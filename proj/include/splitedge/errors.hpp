#ifndef SPLITEDGE_ERRORS_HPP
#define SPLITEDGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace splitedge {

/// Uplink rate is zero (P*|h|^2 = 0); the link cannot carry the payload.
struct ZeroRateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A CSV input file did not match the documented schema.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A channel trace file contained no frames.
struct EmptyTraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The evaluation ledger cap was reached; the optimization run is over.
struct BudgetExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gram matrix failed to factorize even at the maximum jitter level.
struct SingularGramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace splitedge

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace decompeval {

/// No function and no plausible top-level declaration could be recovered; the
/// file must be rewritten or excluded.
struct ParseFatal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Both trees of a ted_score call were empty.
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input exceeds the exhaustive-search bound of brute_force_ted.
struct SizeBound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// aggregate() was asked to summarize an empty group.
struct EmptyGroup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A result file does not conform to the decompeval/1 schema.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed toolchain/rules configuration (missing stage, residual
/// placeholder, bad JSON, ...).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A test-case source violates the wrapping contract (library call, global
/// access, or unanalyzable construct in the core function).
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace decompeval

#pragma once

#include <stdexcept>
#include <string>

namespace otx {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text / JSON.
struct ParseError : Error {
  using Error::Error;
};

/// A machine or table fails a structural well-formedness check.
struct ValidationError : Error {
  using Error::Error;
};

/// An argument is outside the domain of an operation (e.g. an origin
/// points past the end of the input).
struct DomainError : Error {
  using Error::Error;
};

/// A two-way run (or its summary computation) would not terminate.
struct NonterminationError : Error {
  using Error::Error;
};

/// The per-position family handed to the merge step cannot have come from a
/// single transduction; `position` is the first offending 1-based index.
struct InconsistentFamilyError : Error {
  int position;
  InconsistentFamilyError(int pos, const std::string& what)
      : Error(what), position(pos) {}
};

/// The merge step finished with unresolved placeholders.
struct IncompleteMergeError : Error {
  using Error::Error;
};

/// A table operation discovered that the table is not self-consistent.
struct TableError : Error {
  using Error::Error;
};

/// A precondition documented on an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

/// The learning protocol was violated (contradictory answers, bad oracle).
struct ProtocolError : Error {
  using Error::Error;
};

/// A DFA handed to the decoder does not describe any transducer encoding.
struct MalformedLanguageError : Error {
  using Error::Error;
};

/// A computation exceeded a hard resource cap.
struct ResourceError : Error {
  using Error::Error;
};

}  // namespace otx

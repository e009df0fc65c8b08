#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

// Base class for every error raised by the library. The kind() string is
// the stable, machine-readable name used in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define SHIFTLAB_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  }

SHIFTLAB_DEFINE_ERROR(UnknownVertex);
SHIFTLAB_DEFINE_ERROR(NotRightResolving);
SHIFTLAB_DEFINE_ERROR(ReducibleShift);
SHIFTLAB_DEFINE_ERROR(WordNotInLanguage);
SHIFTLAB_DEFINE_ERROR(WordTooShort);
SHIFTLAB_DEFINE_ERROR(WordNotAdmissible);
SHIFTLAB_DEFINE_ERROR(DomainMismatch);
SHIFTLAB_DEFINE_ERROR(AlphabetMismatch);
SHIFTLAB_DEFINE_ERROR(NotFiniteToOne);
SHIFTLAB_DEFINE_ERROR(NotIrreducible);
SHIFTLAB_DEFINE_ERROR(NotMagic);
SHIFTLAB_DEFINE_ERROR(PeriodicPointNotInShift);
SHIFTLAB_DEFINE_ERROR(InfinitelyManyPreimages);
SHIFTLAB_DEFINE_ERROR(ConsistencyFault);
SHIFTLAB_DEFINE_ERROR(GenerationExhausted);

#undef SHIFTLAB_DEFINE_ERROR

class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& what)
      : Error("InvariantViolation", invariant + ": " + what),
        invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

class ParseError : public Error {
 public:
  ParseError(std::string field, int line, const std::string& what)
      : Error("ParseError", (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                                (field.empty() ? what : field + ": " + what)),
        field_(std::move(field)),
        line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

}  // namespace shiftlab

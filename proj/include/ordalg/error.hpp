#pragma once

#include <stdexcept>
#include <string>

namespace ordalg {

enum class Errc {
  DuplicateElement,
  AntisymmetryViolation,
  NotAChain,
  NotMonotone,
  DomainMismatch,
  SquareNotCommuting,
  NotDense,
  NotEmbedding,
  EmptyDiagram,
  MissingSplitting,
  SignatureMismatch,
  UnboundVariable,
  CarrierEmpty,
  PreconditionFailed,
  NotHomomorphism,
  ArityOutOfRange,
  NotInVariety,
  InvalidEMData,
  UnknownName,
  UnknownSuite,
  ParseError,
  InvariantViolation,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::AntisymmetryViolation: return "AntisymmetryViolation";
    case Errc::NotAChain: return "NotAChain";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::SquareNotCommuting: return "SquareNotCommuting";
    case Errc::NotDense: return "NotDense";
    case Errc::NotEmbedding: return "NotEmbedding";
    case Errc::EmptyDiagram: return "EmptyDiagram";
    case Errc::MissingSplitting: return "MissingSplitting";
    case Errc::SignatureMismatch: return "SignatureMismatch";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::CarrierEmpty: return "CarrierEmpty";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::NotHomomorphism: return "NotHomomorphism";
    case Errc::ArityOutOfRange: return "ArityOutOfRange";
    case Errc::NotInVariety: return "NotInVariety";
    case Errc::InvalidEMData: return "InvalidEMData";
    case Errc::UnknownName: return "UnknownName";
    case Errc::UnknownSuite: return "UnknownSuite";
    case Errc::ParseError: return "ParseError";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Error";
}

/// Library-wide exception. Partiality of interpretation is a value
/// (std::optional), never an Error: errors are contract violations.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ordalg

#ifndef LACUNARY_ERROR_HPP
#define LACUNARY_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lacunary {

enum class Errc {
  InvalidArgument,
  IndexOutOfHorizon,
  SupportExceedsHorizon,
  TailBoundUnsatisfiable,
  NotStrictlyIncreasing,
  EmptySchedule,
  NegativeArgument,
  BracketTooSmall,
  NoInteriorMinimum,
  EmptyAdmissibleSet,
  FlagsShorterThanSchedule,
  HorizonTooShort,
  HypothesisUnsatisfiable,
  Config,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IndexOutOfHorizon: return "IndexOutOfHorizon";
    case Errc::SupportExceedsHorizon: return "SupportExceedsHorizon";
    case Errc::TailBoundUnsatisfiable: return "TailBoundUnsatisfiable";
    case Errc::NotStrictlyIncreasing: return "NotStrictlyIncreasing";
    case Errc::EmptySchedule: return "EmptySchedule";
    case Errc::NegativeArgument: return "NegativeArgument";
    case Errc::BracketTooSmall: return "BracketTooSmall";
    case Errc::NoInteriorMinimum: return "NoInteriorMinimum";
    case Errc::EmptyAdmissibleSet: return "EmptyAdmissibleSet";
    case Errc::FlagsShorterThanSchedule: return "FlagsShorterThanSchedule";
    case Errc::HorizonTooShort: return "HorizonTooShort";
    case Errc::HypothesisUnsatisfiable: return "HypothesisUnsatisfiable";
    case Errc::Config: return "Config";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        detail_(what) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace lacunary

#endif  // LACUNARY_ERROR_HPP

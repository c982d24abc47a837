#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plasma {

enum class ErrorCode {
  // smt
  InvalidConfig,
  SlotOutOfRange,
  LeafEqualsDefault,
  MalformedProof,
  BitfieldMismatch,
  // core
  MalformedSignature,
  MalformedEncoding,
  DuplicateSlot,
  // history
  MissingRoot,
  WitnessUnavailable,
  EmptyCandidates,
  // rootchain
  NotOperator,
  InvalidDenomination,
  InsufficientFunds,
  SlotSpaceExhausted,
  DepositBlocksExhausted,
  UnknownCoin,
  CoinNotExitable,
  WrongBond,
  NotNewOwner,
  BadProof,
  BadSignature,
  ParentMismatch,
  NoActiveExit,
  NotDirectSpend,
  NotBetween,
  NotSameParent,
  NotBefore,
  NoSuchChallenge,
  NotDirectSpendOfChallenge,
  NotMature,
  NotExited,
  NotOwner,
  // operator
  UnknownBlock,
  // wallet
  NotOwned,
  // scenarios
  UnknownScenario,
};

std::string_view to_string(ErrorCode code);

/// Thrown by every fallible operation. `code()` is the machine-readable
/// discriminator; the message carries context for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  explicit Error(ErrorCode code) : std::runtime_error(std::string(to_string(code))), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plasma

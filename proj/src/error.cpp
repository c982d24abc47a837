#include "plasma/error.hpp"

namespace plasma {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::SlotOutOfRange: return "SlotOutOfRange";
    case ErrorCode::LeafEqualsDefault: return "LeafEqualsDefault";
    case ErrorCode::MalformedProof: return "MalformedProof";
    case ErrorCode::BitfieldMismatch: return "BitfieldMismatch";
    case ErrorCode::MalformedSignature: return "MalformedSignature";
    case ErrorCode::MalformedEncoding: return "MalformedEncoding";
    case ErrorCode::DuplicateSlot: return "DuplicateSlot";
    case ErrorCode::MissingRoot: return "MissingRoot";
    case ErrorCode::WitnessUnavailable: return "WitnessUnavailable";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::NotOperator: return "NotOperator";
    case ErrorCode::InvalidDenomination: return "InvalidDenomination";
    case ErrorCode::InsufficientFunds: return "InsufficientFunds";
    case ErrorCode::SlotSpaceExhausted: return "SlotSpaceExhausted";
    case ErrorCode::DepositBlocksExhausted: return "DepositBlocksExhausted";
    case ErrorCode::UnknownCoin: return "UnknownCoin";
    case ErrorCode::CoinNotExitable: return "CoinNotExitable";
    case ErrorCode::WrongBond: return "WrongBond";
    case ErrorCode::NotNewOwner: return "NotNewOwner";
    case ErrorCode::BadProof: return "BadProof";
    case ErrorCode::BadSignature: return "BadSignature";
    case ErrorCode::ParentMismatch: return "ParentMismatch";
    case ErrorCode::NoActiveExit: return "NoActiveExit";
    case ErrorCode::NotDirectSpend: return "NotDirectSpend";
    case ErrorCode::NotBetween: return "NotBetween";
    case ErrorCode::NotSameParent: return "NotSameParent";
    case ErrorCode::NotBefore: return "NotBefore";
    case ErrorCode::NoSuchChallenge: return "NoSuchChallenge";
    case ErrorCode::NotDirectSpendOfChallenge: return "NotDirectSpendOfChallenge";
    case ErrorCode::NotMature: return "NotMature";
    case ErrorCode::NotExited: return "NotExited";
    case ErrorCode::NotOwner: return "NotOwner";
    case ErrorCode::UnknownBlock: return "UnknownBlock";
    case ErrorCode::NotOwned: return "NotOwned";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
  }
  return "Unknown";
}

}  // namespace plasma

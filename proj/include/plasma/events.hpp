#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "plasma/core.hpp"

namespace plasma {

using Amount = std::int64_t;
using Time = std::uint64_t;

struct DepositEvent {
  Slot slot;
  Address depositor;
  Amount denomination;
  BlockNumber block;
  Digest root;
  bool operator==(const DepositEvent&) const = default;
};

struct BlockSubmittedEvent {
  BlockNumber block;
  Digest root;
  bool operator==(const BlockSubmittedEvent&) const = default;
};

struct ExitStartedEvent {
  Slot slot;
  Address exitor;
  std::optional<IncludedTx> parent;
  IncludedTx exit;
  Amount bond;
  bool operator==(const ExitStartedEvent&) const = default;
};

enum class ChallengeKind { After, Between, Before };
std::string_view to_string(ChallengeKind kind);

/// ChallengedAfter / ChallengedBetween / ChallengedBefore. The carried
/// transaction is the revealed witness; `challenge_id` is set for Before.
struct ChallengedEvent {
  ChallengeKind kind;
  Slot slot;
  Address challenger;
  IncludedTx tx;
  std::optional<std::uint64_t> challenge_id;
  bool operator==(const ChallengedEvent&) const = default;
};

struct ChallengeRespondedEvent {
  Slot slot;
  std::uint64_t challenge_id;
  Address responder;
  IncludedTx response;
  bool operator==(const ChallengeRespondedEvent&) const = default;
};

struct ExitFinalizedEvent {
  Slot slot;
  Address exitor;
  bool operator==(const ExitFinalizedEvent&) const = default;
};

/// Exit bond paid out to `beneficiaries`.
struct ExitCancelledEvent {
  Slot slot;
  Address exitor;
  std::vector<Address> beneficiaries;
  bool operator==(const ExitCancelledEvent&) const = default;
};

struct WithdrawnEvent {
  Slot slot;
  Address owner;
  Amount amount;
  bool operator==(const WithdrawnEvent&) const = default;
};

using EventBody = std::variant<DepositEvent, BlockSubmittedEvent, ExitStartedEvent, ChallengedEvent,
                               ChallengeRespondedEvent, ExitFinalizedEvent, ExitCancelledEvent,
                               WithdrawnEvent>;

struct Event {
  std::uint64_t seq = 0;
  Time time = 0;
  EventBody body;
  bool operator==(const Event&) const = default;
};

/// "Deposit", "BlockSubmitted", "ExitStarted", "ChallengedAfter", ...
std::string_view event_name(const EventBody& body);

}  // namespace plasma

#include "plasma/events.hpp"

namespace plasma {

std::string_view to_string(ChallengeKind kind) {
  switch (kind) {
    case ChallengeKind::After: return "After";
    case ChallengeKind::Between: return "Between";
    case ChallengeKind::Before: return "Before";
  }
  return "Unknown";
}

namespace {
struct NameOf {
  std::string_view operator()(const DepositEvent&) const { return "Deposit"; }
  std::string_view operator()(const BlockSubmittedEvent&) const { return "BlockSubmitted"; }
  std::string_view operator()(const ExitStartedEvent&) const { return "ExitStarted"; }
  std::string_view operator()(const ChallengedEvent& e) const {
    switch (e.kind) {
      case ChallengeKind::After: return "ChallengedAfter";
      case ChallengeKind::Between: return "ChallengedBetween";
      case ChallengeKind::Before: return "ChallengedBefore";
    }
    return "Challenged";
  }
  std::string_view operator()(const ChallengeRespondedEvent&) const { return "ChallengeResponded"; }
  std::string_view operator()(const ExitFinalizedEvent&) const { return "ExitFinalized"; }
  std::string_view operator()(const ExitCancelledEvent&) const { return "ExitCancelled"; }
  std::string_view operator()(const WithdrawnEvent&) const { return "Withdrawn"; }
};
}  // namespace

std::string_view event_name(const EventBody& body) { return std::visit(NameOf{}, body); }

}  // namespace plasma

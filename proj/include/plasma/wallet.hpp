#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plasma/events.hpp"
#include "plasma/history.hpp"
#include "plasma/signature.hpp"

namespace plasma {

class PlasmaContract;

struct WalletPolicy {
  bool auto_challenge = true;  // watch the root chain and dispute exits
};

/// Client for one key: holds verified coin histories, pays, exits and watches
/// the root chain for exits against its coins.
class Wallet {
 public:
  using Policy = WalletPolicy;

  enum class ActionKind { ChallengeAfter, ChallengeBetween, ChallengeBefore, RespondChallengeBefore };

  struct Action {
    ActionKind kind;
    Slot slot;
    bool ok;
    std::string error;
  };

  struct Receipt {
    bool accepted = false;
    std::optional<RejectReason> reason;  // set when the history verifier rejected
    std::string detail;
  };

  Wallet(std::string name, Signer signer, const SignatureScheme& scheme, SmtConfig config,
         Policy policy = {});

  const std::string& name() const { return name_; }
  const Address& address() const { return signer_.address; }
  const Policy& policy() const { return policy_; }
  void set_policy(Policy policy) { policy_ = policy; }

  bool owns(Slot slot) const { return coins_.contains(slot); }
  const std::map<Slot, CoinHistory>& coins() const { return coins_; }
  const CoinHistory& history(Slot slot) const;

  /// Signed spend of an owned coin to `new_owner`. Throws NotOwned.
  Transaction send_coin(Slot slot, const Address& new_owner) const;

  /// After the spend is included: collect the full history for the receiver
  /// and drop the coin. Throws WitnessUnavailable when the operator withholds.
  CoinHistory hand_over(Slot slot, const RootView& view, const WitnessSource& source);

  /// Accepts iff the history verifies, ends at this wallet, and this wallet's
  /// spend is the earliest among spends of its parent.
  Receipt receive_coin(const CoinHistory& history, const RootView& view, const Address& deposit_owner);

  /// Re-fetches an owned coin's history up to the view's head. A clean result
  /// history still ending at this wallet replaces the stored one; anything
  /// else leaves it untouched.
  Verdict refresh(Slot slot, const RootView& view, const WitnessSource& source,
                  const Address& deposit_owner);

  /// Exits an owned coin with its last two inclusions (or the deposit alone).
  void start_exit(PlasmaContract& contract, Slot slot);
  /// Drops a coin after it was withdrawn or lost.
  void forget(Slot slot) { coins_.erase(slot); }

  /// Handles events not seen yet by this wallet.
  std::vector<Action> watch_and_challenge(PlasmaContract& contract);
  /// Handles the given events: challenges exits of owned coins by others and
  /// answers before-challenges raised against this wallet's exits.
  std::vector<Action> watch_and_challenge(std::span<const Event> events, PlasmaContract& contract);

 private:
  std::optional<Action> challenge_exit(const ExitStartedEvent& started, PlasmaContract& contract);
  std::optional<Action> respond(const ChallengedEvent& challenge, PlasmaContract& contract);

  std::string name_;
  Signer signer_;
  const SignatureScheme* scheme_;
  SmtConfig config_;
  Policy policy_;
  std::map<Slot, CoinHistory> coins_;
  std::uint64_t cursor_ = 0;
  std::set<Slot> before_challenged_;  // one bonded challenge per active exit
};

std::string_view to_string(Wallet::ActionKind kind);

}  // namespace plasma

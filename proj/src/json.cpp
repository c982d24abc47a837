#include "plasma/json.hpp"

#include <sstream>

#include "plasma/error.hpp"

namespace plasma {

namespace {

Json opt_itx(const std::optional<IncludedTx>& itx, const SmtConfig& config) {
  return itx ? to_json(*itx, config) : Json(nullptr);
}

std::optional<IncludedTx> opt_itx_from(const Json& j, const SmtConfig& config) {
  if (j.is_null()) return std::nullopt;
  return included_tx_from_json(j, config);
}

Address address_from(const Json& j) { return Address::from_hex(j.get<std::string>()); }

struct EventToJson {
  const SmtConfig& config;
  Json& out;

  void operator()(const DepositEvent& e) const {
    out["slot"] = e.slot;
    out["depositor"] = e.depositor.hex();
    out["denomination"] = e.denomination;
    out["block"] = e.block;
    out["root"] = e.root.hex();
  }
  void operator()(const BlockSubmittedEvent& e) const {
    out["block"] = e.block;
    out["root"] = e.root.hex();
  }
  void operator()(const ExitStartedEvent& e) const {
    out["slot"] = e.slot;
    out["exitor"] = e.exitor.hex();
    out["parent"] = opt_itx(e.parent, config);
    out["exit"] = to_json(e.exit, config);
    out["bond"] = e.bond;
  }
  void operator()(const ChallengedEvent& e) const {
    out["slot"] = e.slot;
    out["challenger"] = e.challenger.hex();
    out["tx"] = to_json(e.tx, config);
    out["challenge_id"] = e.challenge_id ? Json(*e.challenge_id) : Json(nullptr);
  }
  void operator()(const ChallengeRespondedEvent& e) const {
    out["slot"] = e.slot;
    out["challenge_id"] = e.challenge_id;
    out["responder"] = e.responder.hex();
    out["response"] = to_json(e.response, config);
  }
  void operator()(const ExitFinalizedEvent& e) const {
    out["slot"] = e.slot;
    out["exitor"] = e.exitor.hex();
  }
  void operator()(const ExitCancelledEvent& e) const {
    out["slot"] = e.slot;
    out["exitor"] = e.exitor.hex();
    Json list = Json::array();
    for (const auto& a : e.beneficiaries) list.push_back(a.hex());
    out["beneficiaries"] = std::move(list);
  }
  void operator()(const WithdrawnEvent& e) const {
    out["slot"] = e.slot;
    out["owner"] = e.owner.hex();
    out["amount"] = e.amount;
  }
};

}  // namespace

Json to_json(const Transaction& tx) {
  return Json{{"slot", tx.slot},
              {"parent_block", tx.parent_block},
              {"new_owner", tx.new_owner.hex()},
              {"signature", to_hex(tx.signature)}};
}

Transaction transaction_from_json(const Json& j) {
  Transaction tx;
  tx.slot = j.at("slot").get<Slot>();
  tx.parent_block = j.at("parent_block").get<BlockNumber>();
  tx.new_owner = address_from(j.at("new_owner"));
  tx.signature = from_hex(j.at("signature").get<std::string>());
  return tx;
}

Json to_json(const IncludedTx& itx, const SmtConfig& config) {
  Json proof;
  if (const auto* naive = std::get_if<Proof>(&itx.proof)) {
    proof = {{"kind", "naive"}, {"data", to_hex(serialize(*naive))}};
  } else {
    proof = {{"kind", "compact"}, {"data", to_hex(serialize(std::get<CompactProof>(itx.proof), config))}};
  }
  return Json{{"block", itx.block},
              {"tx", itx.tx ? to_json(*itx.tx) : Json(nullptr)},
              {"proof", std::move(proof)}};
}

IncludedTx included_tx_from_json(const Json& j, const SmtConfig& config) {
  IncludedTx itx;
  itx.block = j.at("block").get<BlockNumber>();
  if (!j.at("tx").is_null()) itx.tx = transaction_from_json(j.at("tx"));
  const Json& proof = j.at("proof");
  const std::string kind = proof.at("kind").get<std::string>();
  const Bytes data = from_hex(proof.at("data").get<std::string>());
  if (kind == "naive")
    itx.proof = parse_proof(data, config);
  else if (kind == "compact")
    itx.proof = parse_compact_proof(data, config);
  else
    throw Error(ErrorCode::MalformedEncoding, "unknown proof kind '" + kind + "'");
  return itx;
}

Json to_json(const CoinHistory& history, const SmtConfig& config) {
  Json included = Json::array();
  for (const auto& [b, itx] : history.included) included.push_back(to_json(itx, config));
  Json excluded = Json::array();
  for (const auto& [b, itx] : history.excluded) excluded.push_back(to_json(itx, config));
  return Json{{"slot", history.slot},
              {"deposit_block", history.deposit_block},
              {"included", std::move(included)},
              {"excluded", std::move(excluded)}};
}

CoinHistory history_from_json(const Json& j, const SmtConfig& config) {
  CoinHistory history;
  history.slot = j.at("slot").get<Slot>();
  history.deposit_block = j.at("deposit_block").get<BlockNumber>();
  for (const auto& item : j.at("included")) {
    IncludedTx itx = included_tx_from_json(item, config);
    history.included.emplace(itx.block, std::move(itx));
  }
  for (const auto& item : j.at("excluded")) {
    IncludedTx itx = included_tx_from_json(item, config);
    history.excluded.emplace(itx.block, std::move(itx));
  }
  return history;
}

Json to_json(const Event& event, const SmtConfig& config) {
  Json out{{"seq", event.seq}, {"time", event.time}, {"type", std::string(event_name(event.body))}};
  std::visit(EventToJson{config, out}, event.body);
  return out;
}

Event event_from_json(const Json& j, const SmtConfig& config) {
  Event event;
  event.seq = j.at("seq").get<std::uint64_t>();
  event.time = j.at("time").get<Time>();
  const std::string type = j.at("type").get<std::string>();

  if (type == "Deposit") {
    event.body = DepositEvent{j.at("slot").get<Slot>(), address_from(j.at("depositor")),
                              j.at("denomination").get<Amount>(), j.at("block").get<BlockNumber>(),
                              Digest::from_hex(j.at("root").get<std::string>())};
  } else if (type == "BlockSubmitted") {
    event.body = BlockSubmittedEvent{j.at("block").get<BlockNumber>(),
                                     Digest::from_hex(j.at("root").get<std::string>())};
  } else if (type == "ExitStarted") {
    event.body = ExitStartedEvent{j.at("slot").get<Slot>(), address_from(j.at("exitor")),
                                  opt_itx_from(j.at("parent"), config),
                                  included_tx_from_json(j.at("exit"), config), j.at("bond").get<Amount>()};
  } else if (type == "ChallengedAfter" || type == "ChallengedBetween" || type == "ChallengedBefore") {
    ChallengeKind kind = type == "ChallengedAfter"     ? ChallengeKind::After
                         : type == "ChallengedBetween" ? ChallengeKind::Between
                                                       : ChallengeKind::Before;
    std::optional<std::uint64_t> id;
    if (!j.at("challenge_id").is_null()) id = j.at("challenge_id").get<std::uint64_t>();
    event.body = ChallengedEvent{kind, j.at("slot").get<Slot>(), address_from(j.at("challenger")),
                                 included_tx_from_json(j.at("tx"), config), id};
  } else if (type == "ChallengeResponded") {
    event.body = ChallengeRespondedEvent{j.at("slot").get<Slot>(), j.at("challenge_id").get<std::uint64_t>(),
                                         address_from(j.at("responder")),
                                         included_tx_from_json(j.at("response"), config)};
  } else if (type == "ExitFinalized") {
    event.body = ExitFinalizedEvent{j.at("slot").get<Slot>(), address_from(j.at("exitor"))};
  } else if (type == "ExitCancelled") {
    std::vector<Address> beneficiaries;
    for (const auto& a : j.at("beneficiaries")) beneficiaries.push_back(address_from(a));
    event.body = ExitCancelledEvent{j.at("slot").get<Slot>(), address_from(j.at("exitor")),
                                    std::move(beneficiaries)};
  } else if (type == "Withdrawn") {
    event.body = WithdrawnEvent{j.at("slot").get<Slot>(), address_from(j.at("owner")),
                                j.at("amount").get<Amount>()};
  } else {
    throw Error(ErrorCode::MalformedEncoding, "unknown event type '" + type + "'");
  }
  return event;
}

std::string to_json_lines(const std::vector<Event>& events, const SmtConfig& config) {
  std::string out;
  for (const auto& e : events) {
    out += to_json(e, config).dump();
    out += '\n';
  }
  return out;
}

std::vector<Event> events_from_json_lines(const std::string& text, const SmtConfig& config) {
  std::vector<Event> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(event_from_json(Json::parse(line), config));
  }
  return out;
}

}  // namespace plasma

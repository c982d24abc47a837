#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "plasma/core.hpp"
#include "plasma/events.hpp"
#include "plasma/history.hpp"

namespace plasma {

using Json = nlohmann::json;

// Digests, addresses, signatures and proofs are lowercase hex strings; proofs
// use their bit-exact wire form.

Json to_json(const Transaction& tx);
Transaction transaction_from_json(const Json& j);

Json to_json(const IncludedTx& itx, const SmtConfig& config);
IncludedTx included_tx_from_json(const Json& j, const SmtConfig& config);

Json to_json(const CoinHistory& history, const SmtConfig& config);
CoinHistory history_from_json(const Json& j, const SmtConfig& config);

Json to_json(const Event& event, const SmtConfig& config);
Event event_from_json(const Json& j, const SmtConfig& config);

/// One compact JSON object per line.
std::string to_json_lines(const std::vector<Event>& events, const SmtConfig& config);
std::vector<Event> events_from_json_lines(const std::string& text, const SmtConfig& config);

}  // namespace plasma

#include <doctest.h>

#include <algorithm>

#include "corpus.hpp"
#include "plasma/error.hpp"
#include "plasma/json.hpp"

using namespace plasma;

namespace {

struct Chain {
  Simulation sim;
  Slot slot = 0;

  // alice deposits at 1, pays bob at 1000, an unrelated block at 2000, bob
  // pays charlie at 3000, then one more empty block.
  Chain() {
    for (const char* n : {"alice", "bob", "charlie", "dylan"}) sim.add_wallet(n, 1'000'000);
    slot = sim.deposit("alice", 10);
    sim.transfer("alice", "bob", slot);
    sim.produce_block();
    sim.deliver("alice", "bob", slot);
    sim.produce_block();
    sim.transfer("bob", "charlie", slot);
    sim.produce_block();
    sim.deliver("bob", "charlie", slot);
    sim.produce_block();
  }

  Verdict check(const CoinHistory& h) {
    return verify_history(h, sim.contract().coin_view(slot), sim.wallet("alice").address(), sim.scheme(),
                          sim.smt_config());
  }
};

}  // namespace

TEST_SUITE("history") {
  TEST_CASE("a chain of two payments verifies") {
    Chain c;
    const CoinHistory h = c.sim.chain_history(c.slot);
    CHECK(c.check(h).accepted());
    CHECK(h.current_owner() == c.sim.wallet("charlie").address());
    CHECK(h.last_inclusion() == 3000);
    std::vector<BlockNumber> inc, exc;
    for (const auto& [b, itx] : h.included) inc.push_back(b);
    for (const auto& [b, itx] : h.excluded) exc.push_back(b);
    CHECK(inc == std::vector<BlockNumber>{1, 1000, 3000});
    CHECK(exc == std::vector<BlockNumber>{2000, 4000});
    CHECK(c.sim.wallet("charlie").owns(c.slot));
    CHECK_FALSE(c.sim.wallet("bob").owns(c.slot));
  }

  TEST_CASE("deposit-only history") {
    Simulation sim;
    sim.add_wallet("alice", 100);
    const Slot slot = sim.deposit("alice", 10);
    const CoinHistory h = sim.chain_history(slot);
    CHECK(h.included.size() == 1);
    CHECK(h.excluded.empty());
    CHECK(verify_history(h, sim.contract().coin_view(slot), sim.wallet("alice").address(), sim.scheme(),
                         sim.smt_config())
              .accepted());
  }

  TEST_CASE("an idle coin needs one exclusion per operator block") {
    Simulation sim;
    sim.add_wallet("alice", 100);
    const Slot slot = sim.deposit("alice", 10);
    for (unsigned k = 1; k <= 12; ++k) {
      sim.produce_block();
      const CoinHistory h = sim.chain_history(slot);
      CHECK(h.excluded.size() == k);
      CHECK(h.included.size() == 1);
    }
  }

  TEST_CASE("other coins' deposit blocks are not part of a coin's view") {
    Simulation sim;
    sim.add_wallet("alice", 100);
    const Slot first = sim.deposit("alice", 10);
    sim.deposit("alice", 10);
    sim.produce_block();
    sim.deposit("alice", 10);
    sim.produce_block();
    CHECK(sim.contract().coin_view(first).blocks == std::vector<BlockNumber>{1, 1000, 2000});
  }

  TEST_CASE("specific rejections") {
    Chain c;
    const CoinHistory h = c.sim.chain_history(c.slot);
    const SmtConfig& config = c.sim.smt_config();

    {
      CoinHistory bad = h;
      bad.included.at(3000).tx->new_owner = c.sim.wallet("dylan").address();
      const Verdict v = c.check(bad);
      CHECK(v.reason == RejectReason::BadInclusionProof);
      CHECK(v.block == 3000);
    }
    {
      CoinHistory bad = h;
      bad.excluded.erase(2000);
      CHECK(c.check(bad).reason == RejectReason::PartitionGap);
    }
    {
      CoinHistory bad = h;
      bad.excluded.emplace(3000, c.sim.chain_operator().reveal_witness(c.slot, 2000));
      CHECK(c.check(bad).reason == RejectReason::PartitionOverlap);
    }
    {
      // Hiding the 1000 spend breaks the link of the next one first.
      CoinHistory bad = h;
      IncludedTx fake{std::nullopt, 1000, c.sim.chain_operator().reveal_witness(c.slot, 1000).proof};
      bad.included.erase(1000);
      bad.excluded.emplace(1000, fake);
      const Verdict v = c.check(bad);
      CHECK(v.reason == RejectReason::BrokenParentLink);
      CHECK(v.block == 3000);
    }
    {
      // Hiding the latest spend is caught by its exclusion proof.
      CoinHistory bad = h;
      IncludedTx fake{std::nullopt, 3000, c.sim.chain_operator().reveal_witness(c.slot, 3000).proof};
      bad.included.erase(3000);
      bad.excluded.emplace(3000, fake);
      const Verdict v = c.check(bad);
      CHECK(v.reason == RejectReason::BadExclusionProof);
      CHECK(v.block == 3000);
    }
    {
      // Proof for a different slot.
      CoinHistory bad = h;
      const Slot other = c.slot + 1;
      bad.excluded.at(2000).proof = c.sim.chain_operator().block(2000).tree(config).prove(other);
      const auto before = c.check(bad);
      CHECK(before.accepted());  // both are default leaves next to each other in an empty tree
      bad.included.at(1000).proof = c.sim.chain_operator().block(1000).tree(config).prove(other);
      CHECK(c.check(bad).reason == RejectReason::BadInclusionProof);
    }
  }

  TEST_CASE("missing roots throw") {
    Chain c;
    const CoinHistory h = c.sim.chain_history(c.slot);
    RootView view = c.sim.contract().coin_view(c.slot);
    view.roots.erase(2000);
    try {
      verify_history(h, view, c.sim.wallet("alice").address(), c.sim.scheme(), c.sim.smt_config());
      FAIL("expected MissingRoot");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingRoot);
    }
  }

  TEST_CASE("truncated views") {
    Chain c;
    const RootView view = c.sim.contract().coin_view(c.slot);
    CHECK(view.up_to(2000).blocks == std::vector<BlockNumber>{1, 1000, 2000});
    CHECK(view.blocks_from(1000) == std::vector<BlockNumber>{1000, 2000, 3000, 4000});
    const CoinHistory h = build_history(c.slot, 1, view.up_to(2000), c.sim.chain_operator());
    CHECK(h.current_owner() == c.sim.wallet("bob").address());
    CHECK(verify_history(h, view.up_to(2000), c.sim.wallet("alice").address(), c.sim.scheme(), c.sim.smt_config())
              .accepted());
  }

  TEST_CASE("withheld witnesses stop history collection") {
    Chain c;
    c.sim.chain_operator().withhold(c.slot, 2000);
    CHECK_NOTHROW(build_history(c.slot, 1, c.sim.contract().coin_view(c.slot), c.sim.chain_operator()));
    c.sim.chain_operator().set_mode({OperatorMode::Kind::WithholdWitness, {}});
    try {
      build_history(c.slot, 1, c.sim.contract().coin_view(c.slot), c.sim.chain_operator());
      FAIL("expected WitnessUnavailable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WitnessUnavailable);
    }
    c.sim.chain_operator().release(c.slot, 2000);
    CHECK_NOTHROW(build_history(c.slot, 1, c.sim.contract().coin_view(c.slot), c.sim.chain_operator()));
  }

  TEST_CASE("earliest owner among spends of one parent") {
    CHECK_THROWS_AS(earliest_owner_filter({}), Error);
    std::vector<IncludedTx> spends;
    for (BlockNumber b : {5000u, 2000u, 9000u, 3000u}) spends.push_back({Transaction{1, 1000, {}, {}}, b, Proof{}});
    std::sort(spends.begin(), spends.end(), [](const auto& a, const auto& b) { return a.block < b.block; });
    do {
      CHECK(earliest_owner_filter(spends).block == 2000);
    } while (std::next_permutation(spends.begin(), spends.end(),
                                   [](const auto& a, const auto& b) { return a.block < b.block; }));
  }

  TEST_CASE("binary and JSON round trips") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      corpus::Run run = corpus::honest_run(seed, false);
      const SmtConfig& config = run.sim->smt_config();
      for (const auto& c : run.cases) {
        CHECK(decode_history(encode(c.history, config), config) == c.history);
        CHECK(history_from_json(to_json(c.history, config), config) == c.history);
        CHECK(history_from_json(Json::parse(to_json(c.history, config).dump()), config) == c.history);
      }
      const auto& events = run.sim->contract().events();
      CHECK(events_from_json_lines(to_json_lines(events, config), config) == events);
    }
  }

  TEST_CASE("verifier agrees with block replay on the corpus") {
    std::size_t cases = 0;
    std::map<std::string, std::size_t> by_label;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      corpus::Run run = corpus::honest_run(seed, true);
      for (const auto& c : run.cases) {
        const corpus::Judgement j = corpus::judge(*run.sim, c);
        INFO("seed " << seed << " case " << c.label);
        CHECK(corpus::matches(c, j));
        ++cases;
        ++by_label[c.label];
      }
    }
    CHECK(cases > 300);
    CHECK(by_label.size() == 8);
    for (auto& run : corpus::byzantine_runs())
      for (const auto& c : run.cases) {
        INFO(c.label);
        CHECK(corpus::matches(c, corpus::judge(*run.sim, c)));
      }
  }
}

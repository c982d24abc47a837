#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "plasma/error.hpp"
#include "plasma/operator.hpp"

using namespace plasma;

namespace {

struct Bench {
  TestSignatureScheme scheme;
  Signer alice = scheme.create_signer("alice");
  Signer bob = scheme.create_signer("bob");
  Operator op;

  explicit Bench(unsigned depth = 64, OperatorMode mode = {})
      : op(scheme.create_signer("operator"), scheme, SmtConfig(depth), 1000, mode) {}

  Transaction pay(const Signer& from, Slot slot, BlockNumber parent, const Signer& to) {
    return sign_transaction({slot, parent, to.address, {}}, from, scheme);
  }
};

}  // namespace

TEST_SUITE("operator") {
  TEST_CASE("block numbers and empty blocks") {
    Bench b;
    CHECK(b.op.next_block_number() == 1000);
    const PlasmaBlock& first = b.op.produce_block();
    CHECK(first.number == 1000);
    CHECK(first.txs.empty());
    CHECK(first.root == b.op.smt_config().empty_root());
    CHECK(b.op.produce_block().number == 2000);
    b.op.record_deposit(0, 2001, b.alice.address);
    CHECK(b.op.next_block_number() == 3000);
    CHECK(b.op.block_numbers() == std::vector<BlockNumber>{1000, 2000, 2001});
  }

  TEST_CASE("a full block of random slots") {
    Bench b;
    std::mt19937_64 rng(2378);
    std::map<Slot, Digest> leaves;
    BlockNumber deposit_block = 1;
    while (leaves.size() < 2378) {
      const Slot slot = rng();
      if (leaves.contains(slot)) continue;
      b.op.record_deposit(slot, deposit_block++, b.alice.address);
      const Transaction tx = b.pay(b.alice, slot, deposit_block - 1, b.bob);
      REQUIRE(b.op.submit_tx(tx).accepted);
      leaves.emplace(slot, oracle::sha256(oracle::tx_bytes(tx)));
    }
    const PlasmaBlock& block = b.op.produce_block();
    CHECK(block.number == 1000);
    CHECK(block.txs.size() == 2378);
    CHECK(b.op.pending().empty());
    const SmtConfig& config = b.op.smt_config();
    CHECK(block.root == SparseMerkleTree::build(config, leaves).root());

    for (int i = 0; i < 50; ++i) {
      const Slot slot = std::next(leaves.begin(), static_cast<std::ptrdiff_t>(rng() % leaves.size()))->first;
      const auto w = b.op.witness(slot, 1000);
      REQUIRE(w);
      CHECK_FALSE(w->is_exclusion());
      CHECK(verify_included(*w, slot, block.root, config));
      CHECK(b.op.ownership(slot)->owner == b.bob.address);
      CHECK(b.op.ownership(slot)->last_inclusion == 1000);
      const Slot absent = rng();
      if (leaves.contains(absent)) continue;
      const auto x = b.op.witness(absent, 1000);
      CHECK(x->is_exclusion());
      CHECK(verify_included(*x, absent, block.root, config));
    }
    b.op.set_compact_proofs(false);
    const Slot any = leaves.begin()->first;
    CHECK(std::holds_alternative<Proof>(b.op.witness(any, 1000)->proof));
    CHECK(verify_included(*b.op.witness(any, 1000), any, block.root, config));
  }

  TEST_CASE("honest operator refuses bad spends") {
    Bench b(16);
    b.op.record_deposit(3, 1, b.alice.address);
    CHECK(b.op.submit_tx(b.pay(b.alice, 4, 1, b.bob)).reason == "unknown coin");
    CHECK(b.op.submit_tx(b.pay(b.alice, 70000, 1, b.bob)).reason == "slot out of range");
    CHECK(b.op.submit_tx(b.pay(b.alice, 3, 2, b.bob)).reason == "parent is not the latest inclusion");
    CHECK(b.op.submit_tx(b.pay(b.bob, 3, 1, b.bob)).reason == "not signed by owner");
    CHECK(b.op.submit_tx(b.pay(b.alice, 3, 1, b.bob)).accepted);
    CHECK(b.op.submit_tx(b.pay(b.alice, 3, 1, b.alice)).reason == "coin already spent in this block");
    b.op.produce_block();
    CHECK(b.op.submit_tx(b.pay(b.alice, 3, 1, b.alice)).reason == "parent is not the latest inclusion");
    CHECK(b.op.submit_tx(b.pay(b.bob, 3, 1000, b.alice)).accepted);
  }

  TEST_CASE("byzantine modes") {
    {
      Bench b(16, {OperatorMode::Kind::IncludeForgedTx, {}});
      b.op.record_deposit(3, 1, b.alice.address);
      CHECK(b.op.submit_tx(b.pay(b.bob, 3, 1, b.bob)).accepted);
      CHECK(b.op.submit_tx(b.pay(b.bob, 3, 77, b.alice)).accepted);
      CHECK(b.op.produce_block().txs.at(3).new_owner == b.bob.address);
      CHECK(b.op.pending().size() == 1);  // second spend of the slot waits
      CHECK(b.op.produce_block().txs.at(3).parent_block == 77);
      CHECK(b.op.ownership(3)->owner == b.alice.address);
    }
    {
      Bench b(16, {OperatorMode::Kind::IncludeDoubleSpend, {}});
      b.op.record_deposit(3, 1, b.alice.address);
      CHECK(b.op.submit_tx(b.pay(b.alice, 3, 1, b.bob)).accepted);
      b.op.produce_block();
      CHECK(b.op.submit_tx(b.pay(b.alice, 3, 1, b.alice)).accepted);
      CHECK(b.op.submit_tx(b.pay(b.bob, 3, 1, b.alice)).reason == "not signed by parent owner");
      CHECK(b.op.submit_tx(b.pay(b.alice, 3, 5, b.alice)).reason == "parent is not an inclusion of this coin");
    }
    {
      // Targets limit the deviation to chosen slots.
      Bench b(16, {OperatorMode::Kind::IncludeForgedTx, {3}});
      b.op.record_deposit(3, 1, b.alice.address);
      b.op.record_deposit(4, 2, b.alice.address);
      CHECK(b.op.submit_tx(b.pay(b.bob, 3, 1, b.bob)).accepted);
      CHECK_FALSE(b.op.submit_tx(b.pay(b.bob, 4, 2, b.bob)).accepted);
      CHECK(b.op.mode().deviates_for(3));
      CHECK_FALSE(b.op.mode().deviates_for(4));
    }
  }

  TEST_CASE("withholding and unknown blocks") {
    Bench b(16, {OperatorMode::Kind::WithholdWitness, {}});
    b.op.record_deposit(3, 1, b.alice.address);
    b.op.submit_tx(b.pay(b.alice, 3, 1, b.bob));
    b.op.produce_block();
    b.op.withhold(3, 1000);
    CHECK_FALSE(b.op.witness(3, 1000).has_value());
    CHECK(b.op.witness(4, 1000).has_value());
    CHECK(b.op.reveal_witness(3, 1000).tx->new_owner == b.bob.address);
    b.op.release(3, 1000);
    CHECK(b.op.witness(3, 1000).has_value());
    try {
      b.op.witness(3, 5000);
      FAIL("expected UnknownBlock");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownBlock);
    }
    CHECK_THROWS_AS(b.op.block(2000), Error);
  }
}

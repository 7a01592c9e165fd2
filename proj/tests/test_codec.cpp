#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>

#include "altic/channel.hpp"
#include "altic/codec.hpp"
#include "altic/scheduler.hpp"
#include "decode_oracle.hpp"

using namespace altic;

namespace {

// Nine uses, one per slot, in canonical order; the single block then maps
// slot i to use i.
StateTrace one_block_trace() {
  StateTrace t;
  for (Role r : kAllRoles) t.states.push_back(role_state(r));
  return t;
}

struct BlockRun {
  Field f;
  Schedule sched;
  MessageSource src;
  ScheduleAssignment assign;
  ChannelRealization ch;
  std::array<Observation, 3> obs;

  BlockRun(std::uint32_t p, std::uint64_t channel_seed, std::uint64_t msg_seed)
      : f(p),
        sched(build_schedule(one_block_trace())),
        src(MessageSource::random(f, msg_seed)),
        assign(encode_schedule(sched, src)),
        ch(sample_channel(one_block_trace(), f, channel_seed)),
        obs(transmit(f, sched, assign, ch)) {}

  SymbolId id(int tx, int local) const {
    return assign.blocks[0].fresh[tx][local].id;
  }
};

}  // namespace

TEST_CASE("message sources are logged, reproducible and bounded") {
  const Field f(5);
  MessageSource counter = MessageSource::counter(f);
  for (int tx = 0; tx < 3; ++tx) {
    for (std::uint32_t i = 0; i < 7; ++i) {
      const auto [id, v] = counter.next(tx);
      CHECK(id.tx == tx);
      CHECK(id.seq == i);
      CHECK(v == i % 5);
    }
  }
  CHECK(counter.total_drawn() == 21);
  CHECK(counter.value_of(SymbolId{1, 3}) == 3);
  CHECK_THROWS_AS(counter.value_of(SymbolId{1, 100}), Error);

  MessageSource r1 = MessageSource::random(f, 9);
  MessageSource r2 = MessageSource::random(f, 9);
  MessageSource r3 = MessageSource::random(f, 10);
  bool same = true, differ = false;
  for (int i = 0; i < 60; ++i) {
    const int tx = i % 3;
    const Fe a = r1.next(tx).second;
    const Fe b = r2.next(tx).second;
    const Fe c = r3.next(tx).second;
    same = same && (a == b);
    differ = differ || (a != c);
    CHECK(a < 5);
  }
  CHECK(same);
  CHECK(differ);
  CHECK(r1.value_of(SymbolId{0, 0}) == r2.value_of(SymbolId{0, 0}));

  MessageSource capped = MessageSource::counter(f);
  capped.set_limit(2);
  capped.next(0);
  capped.next(0);
  CHECK_THROWS_AS(capped.next(0), SourceExhausted);
  CHECK_NOTHROW(capped.next(1));
}

TEST_CASE("block structure tables are internally consistent") {
  CHECK(kS1FreshCount[0] + kS1FreshCount[1] + kS1FreshCount[2] == 19);
  for (int slot = 0; slot < kBlockSlots; ++slot) {
    for (int tx = 0; tx < 3; ++tx) {
      CHECK(kS1SlotLocal[slot][tx] >= 0);
      CHECK(kS1SlotLocal[slot][tx] < kS1FreshCount[tx]);
    }
  }
  // Every fresh symbol appears in at least one slot.
  for (int tx = 0; tx < 3; ++tx) {
    std::set<int> used;
    for (int slot = 0; slot < kBlockSlots; ++slot) used.insert(kS1SlotLocal[slot][tx]);
    CHECK(used.size() == static_cast<std::size_t>(kS1FreshCount[tx]));
  }
}

TEST_CASE("slots carry the documented symbols") {
  const auto names = [](int slot) {
    return std::array<std::string, 3>{s1_symbol_name(0, kS1SlotLocal[slot][0]),
                                      s1_symbol_name(1, kS1SlotLocal[slot][1]),
                                      s1_symbol_name(2, kS1SlotLocal[slot][2])};
  };
  CHECK(names(0) == std::array<std::string, 3>{"a1", "a2", "a3"});
  CHECK(names(1) == std::array<std::string, 3>{"b1", "b2", "b3"});
  CHECK(names(2) == std::array<std::string, 3>{"c1", "c2", "c3"});
  CHECK(names(3) == std::array<std::string, 3>{"a4", "c2", "d3"});
  CHECK(names(4) == std::array<std::string, 3>{"e1", "c2", "b3"});
  CHECK(names(5) == std::array<std::string, 3>{"a1", "f2", "b3"});
  CHECK(names(6) == std::array<std::string, 3>{"a4", "g2", "b6"});
  CHECK(names(7) == std::array<std::string, 3>{"a4", "a5", "a6"});
  CHECK(names(8) == std::array<std::string, 3>{"b4", "b5", "b6"});
}

TEST_CASE("one block draws 19 fresh symbols and repeats them as designed") {
  BlockRun run(5, 1, 2);
  const S1Assignment& blk = run.assign.blocks[0];
  CHECK(blk.fresh[0].size() == 6);
  CHECK(blk.fresh[1].size() == 7);
  CHECK(blk.fresh[2].size() == 6);

  std::set<SymbolId> ids;
  for (int tx = 0; tx < 3; ++tx) {
    for (const TxSymbol& ts : blk.fresh[tx]) ids.insert(ts.id);
  }
  CHECK(ids.size() == 19);

  for (int slot = 0; slot < kBlockSlots; ++slot) {
    for (int tx = 0; tx < 3; ++tx) {
      REQUIRE(blk.slots[slot][tx].has_value());
      CHECK(blk.slots[slot][tx]->id == run.id(tx, kS1SlotLocal[slot][tx]));
      CHECK(blk.slots[slot][tx]->value ==
            run.src.value_of(blk.slots[slot][tx]->id));
    }
  }

  // The cross-slot repeats that make joint decoding possible.
  CHECK(blk.slots[3][1]->id == blk.slots[4][1]->id);  // c2 in D and E
  CHECK(blk.slots[4][2]->id == blk.slots[5][2]->id);  // b3 in E and F
  CHECK(blk.slots[5][0]->id == blk.slots[0][0]->id);  // a1 in F and A1
  CHECK(blk.slots[3][0]->id == blk.slots[6][0]->id);  // a4 in D and G
  CHECK(blk.slots[6][0]->id == blk.slots[7][0]->id);  // a4 in G and A2
  CHECK(blk.slots[6][2]->id == blk.slots[8][2]->id);  // b6 in G and B2
}

TEST_CASE("consecutive blocks never share symbols") {
  const Field f(5);
  StateTrace t;
  for (int rep = 0; rep < 2; ++rep) {
    for (Role r : kAllRoles) t.states.push_back(role_state(r));
  }
  const Schedule sched = build_schedule(t);
  REQUIRE(sched.blocks.size() == 2);
  MessageSource src = MessageSource::random(f, 3);
  const ScheduleAssignment a = encode_schedule(sched, src);
  std::set<SymbolId> first, second;
  for (int tx = 0; tx < 3; ++tx) {
    for (const TxSymbol& ts : a.blocks[0].fresh[tx]) first.insert(ts.id);
    for (const TxSymbol& ts : a.blocks[1].fresh[tx]) second.insert(ts.id);
  }
  for (const SymbolId& id : second) CHECK_FALSE(first.count(id));
  CHECK(src.total_drawn() == 38);
}

TEST_CASE("fallback encoding engages exactly the two unsilenced transmitters") {
  const Field f(5);
  for (StateId s : kAllStates) {
    MessageSource src = MessageSource::counter(f);
    const FallbackUse fu{0, s, fallback_silenced_tx(s)};
    const FallbackAssignment a = fallback_encode(fu, src);
    for (int tx = 0; tx < 3; ++tx) {
      CHECK(a.tx[tx].has_value() == (tx != fu.silenced_tx));
    }
    CHECK(src.total_drawn() == 2);
  }
}

TEST_CASE("transmission plan covers every use with the right symbols") {
  BlockRun run(5, 4, 5);
  const auto plan = transmit_plan(run.sched, run.assign);
  REQUIRE(plan.size() == 9);
  for (int slot = 0; slot < kBlockSlots; ++slot) {
    // This trace maps slot i to use i.
    REQUIRE(run.sched.blocks[0].use[slot] == static_cast<std::size_t>(slot));
    for (int tx = 0; tx < 3; ++tx) {
      CHECK(plan[slot][tx]->id == run.assign.blocks[0].slots[slot][tx]->id);
    }
  }
}

TEST_CASE("received values obey the channel law and per-receiver knowledge") {
  BlockRun run(7, 6, 7);
  for (std::size_t k = 0; k < 9; ++k) {
    std::array<Fe, 3> x{};
    for (int tx = 0; tx < 3; ++tx) {
      x[tx] = run.assign.blocks[0].slots[k][tx]->value;
    }
    const auto y = apply_channel(run.f, run.ch.h[k], x);
    for (int rx = 0; rx < 3; ++rx) {
      CHECK(run.obs[rx].uses[k].y == y[rx]);
      CHECK(run.obs[rx].uses[k].h_row == run.ch.h[k][rx]);
    }
  }
  ChannelRealization wrong = run.ch;
  wrong.h.pop_back();
  CHECK_THROWS_AS(transmit(run.f, run.sched, run.assign, wrong), ConfigError);
}

TEST_CASE("each receiver faces the documented nine unknowns") {
  BlockRun run(5, 8, 9);
  const ScheduleIds ids = ids_of(run.assign);

  const auto unknowns_of = [&](int rx) {
    std::set<SymbolId> u;
    for (int slot = 0; slot < kBlockSlots; ++slot) {
      const ReceivedUse& ru = run.obs[rx].uses[slot];
      for (int tx = 0; tx < 3; ++tx) {
        if (ru.h_row[tx] != 0) u.insert(*ids.blocks[0].slots[slot][tx]);
      }
    }
    return u;
  };

  std::set<SymbolId> rx0, rx1, rx2;
  for (int l = 0; l < 6; ++l) rx0.insert(run.id(0, l));
  rx0.insert(run.id(1, 2));  // c2
  rx0.insert(run.id(2, 1));  // b3
  rx0.insert(run.id(2, 5));  // b6
  CHECK(unknowns_of(0) == rx0);

  for (int l = 0; l < 7; ++l) rx1.insert(run.id(1, l));
  rx1.insert(run.id(0, 3));  // a4
  rx1.insert(run.id(2, 1));  // b3
  CHECK(unknowns_of(1) == rx1);

  for (int l = 0; l < 6; ++l) rx2.insert(run.id(2, l));
  rx2.insert(run.id(0, 0));  // a1
  rx2.insert(run.id(1, 2));  // c2
  rx2.insert(run.id(0, 3));  // a4
  CHECK(unknowns_of(2) == rx2);
}

TEST_CASE("joint decoding recovers all nine unknowns at every receiver") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      BlockRun run(p, 1000 + seed, 2000 + seed);
      const ScheduleIds ids = ids_of(run.assign);
      for (int rx = 0; rx < 3; ++rx) {
        const auto solved =
            s1_decode(run.f, rx, run.sched.blocks[0], ids.blocks[0], run.obs[rx]);
        REQUIRE(solved.size() == 9);
        for (const auto& [id, v] : solved) {
          INFO("p=" << p << " seed=" << seed << " rx=" << rx + 1);
          REQUIRE(v == run.src.value_of(id));
        }
      }
    }
  }
}

TEST_CASE("matrix decoding agrees with successive substitution") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    BlockRun run(5, 3000 + seed, 4000 + seed);
    const ScheduleIds ids = ids_of(run.assign);
    for (int rx = 0; rx < 3; ++rx) {
      const auto a =
          s1_decode(run.f, rx, run.sched.blocks[0], ids.blocks[0], run.obs[rx]);
      const auto b = test::subst_decode(run.f, rx, run.sched.blocks[0],
                                        ids.blocks[0], run.obs[rx]);
      REQUIRE(a == b);
    }
  }
}

TEST_CASE("decoding is linear in the messages") {
  const Field f(5);
  const StateTrace t = one_block_trace();
  const Schedule sched = build_schedule(t);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    MessageSource s1 = MessageSource::random(f, 100 + seed);
    MessageSource s2 = MessageSource::random(f, 200 + seed);
    const ScheduleAssignment a1 = encode_schedule(sched, s1);
    const ScheduleAssignment a2 = encode_schedule(sched, s2);

    // Same id structure, summed values.
    ScheduleAssignment sum = a1;
    for (int tx = 0; tx < 3; ++tx) {
      for (std::size_t i = 0; i < sum.blocks[0].fresh[tx].size(); ++i) {
        sum.blocks[0].fresh[tx][i].value = f.add(
            a1.blocks[0].fresh[tx][i].value, a2.blocks[0].fresh[tx][i].value);
      }
    }
    for (int slot = 0; slot < kBlockSlots; ++slot) {
      for (int tx = 0; tx < 3; ++tx) {
        sum.blocks[0].slots[slot][tx] =
            sum.blocks[0].fresh[tx][kS1SlotLocal[slot][tx]];
      }
    }

    const ChannelRealization ch = sample_channel(t, f, 300 + seed);
    const auto obs1 = transmit(f, sched, a1, ch);
    const auto obs2 = transmit(f, sched, a2, ch);
    const auto obs_sum = transmit(f, sched, sum, ch);
    const ScheduleIds ids = ids_of(a1);
    for (int rx = 0; rx < 3; ++rx) {
      const auto d1 = s1_decode(f, rx, sched.blocks[0], ids.blocks[0], obs1[rx]);
      const auto d2 = s1_decode(f, rx, sched.blocks[0], ids.blocks[0], obs2[rx]);
      const auto ds =
          s1_decode(f, rx, sched.blocks[0], ids.blocks[0], obs_sum[rx]);
      for (const auto& [id, v] : ds) {
        REQUIRE(v == f.add(d1.at(id), d2.at(id)));
      }
    }
  }
}

TEST_CASE("fallback decoding recovers both active symbols in every state") {
  const Field f(5);
  for (StateId s : kAllStates) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      StateTrace t;
      t.states = {s};
      const Schedule sched = build_schedule(t);
      REQUIRE(sched.fallback.size() == 1);
      MessageSource src = MessageSource::random(f, 500 + seed);
      const ScheduleAssignment a = encode_schedule(sched, src);
      const ChannelRealization ch = sample_channel(t, f, 600 + seed);
      const auto obs = transmit(f, sched, a, ch);
      const ScheduleIds ids = ids_of(a);
      for (int rx = 0; rx < 3; ++rx) {
        const auto got = fallback_decode(f, rx, ids.fallback[0], obs[rx].uses[0]);
        if (rx == fallback_silenced_tx(s)) {
          CHECK_FALSE(got.has_value());
        } else {
          REQUIRE(got.has_value());
          CHECK(got->first == a.fallback[0].tx[rx]->id);
          CHECK(got->second == src.value_of(got->first));
        }
      }
    }
  }
}

TEST_CASE("fallback decoding divides out the direct coefficient") {
  // State C topology, transmitter 2 silenced: receiver 3 sees only its
  // direct link with coefficient 2 and reads 4, so the symbol is
  // 4 * inv(2) = 2 over GF(5).
  const Field f(5);
  SlotIds ids;
  ids[0] = SymbolId{0, 0};
  ids[2] = SymbolId{2, 0};
  ReceivedUse ru;
  ru.h_row = {0, 3, 2};  // the live cross link 2->3 carries silence
  ru.y = 4;
  const auto got = fallback_decode(f, 2, ids, ru);
  REQUIRE(got.has_value());
  CHECK(got->first == SymbolId{2, 0});
  CHECK(got->second == 2);
}

TEST_CASE("fallback decoding refuses interfered observations") {
  const Field f(5);
  // Hand-built use: all three transmitters engaged under the D topology;
  // receivers 1 and 2 each see a live cross link, receiver 3 too. Nobody
  // should claim a decode.
  SlotIds ids;
  for (int tx = 0; tx < 3; ++tx) ids[tx] = SymbolId{tx, 0};
  const LinkSet links = state_links(StateId::D);
  ReceivedUse ru;
  for (int rx = 0; rx < 3; ++rx) {
    for (int tx = 0; tx < 3; ++tx) ru.h_row[tx] = links.has(tx, rx) ? 1 : 0;
    ru.y = 3;
    CHECK_FALSE(fallback_decode(f, rx, ids, ru).has_value());
  }
  // Silencing transmitter 1 clears both remaining receivers.
  ids[0].reset();
  for (int rx = 1; rx < 3; ++rx) {
    for (int tx = 0; tx < 3; ++tx) ru.h_row[tx] = links.has(tx, rx) ? 1 : 0;
    CHECK(fallback_decode(f, rx, ids, ru).has_value());
  }
}

TEST_CASE("symbol accounting matches the schedule") {
  Rng rng(61);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = uniform_below(rng, 120);
    StateTrace t;
    for (std::size_t i = 0; i < n; ++i) {
      t.states.push_back(kAllStates[uniform_below(rng, 7)]);
    }
    const Field f(5);
    const Schedule sched = build_schedule(t);
    MessageSource src = MessageSource::random(f, rep);
    const ScheduleAssignment a = encode_schedule(sched, src);
    REQUIRE(src.total_drawn() == count_symbols(sched));
  }
}

TEST_CASE("full-block decoding succeeds across thousands of random draws") {
  const std::array<Field, 3> fields{Field(5), Field(7), Field(11)};
  const StateTrace t = one_block_trace();
  const Schedule sched = build_schedule(t);
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const Field& f = fields[seed % fields.size()];
    MessageSource src = MessageSource::random(f, seed * 2 + 1);
    const ScheduleAssignment a = encode_schedule(sched, src);
    const ChannelRealization ch = sample_channel(t, f, seed * 2);
    const auto obs = transmit(f, sched, a, ch);
    const DecodeResult dec = decode_schedule(f, sched, ids_of(a), obs);
    for (int rx = 0; rx < 3; ++rx) {
      REQUIRE(dec.recovered[rx].size() == 9);
      for (const auto& [id, v] : dec.recovered[rx]) {
        REQUIRE(v == src.value_of(id));
      }
    }
    ++runs;
  }
  CHECK(runs == 10000);
}

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "gf.hpp"
#include "rng.hpp"
#include "scheduler.hpp"

namespace altic {

// Identity of one fresh message symbol: which transmitter it belongs to and
// its position in that transmitter's stream.
struct SymbolId {
  int tx = 0;
  std::uint32_t seq = 0;

  friend auto operator<=>(const SymbolId&, const SymbolId&) = default;
};

// Per-transmitter stream of fresh symbols. Random mode drives three
// independent engines (one per transmitter); counter mode emits 0,1,2,..
// mod p for golden tests. Every draw is logged so decoded values can be
// checked against the truth.
class MessageSource {
 public:
  static MessageSource random(const Field& field, std::uint64_t seed) {
    return MessageSource(field, true, seed);
  }

  static MessageSource counter(const Field& field) {
    return MessageSource(field, false, 0);
  }

  // Optional cap on symbols per transmitter; next() past it throws.
  void set_limit(std::size_t limit) { limit_ = limit; }

  std::pair<SymbolId, Fe> next(int tx) {
    auto& vals = values_[tx];
    if (limit_ && vals.size() >= *limit_) {
      throw SourceExhausted("transmitter " + std::to_string(tx + 1) +
                            " has no fresh symbols left");
    }
    const Fe v = random_
                     ? static_cast<Fe>(uniform_below(rng_[tx], field_.p()))
                     : field_.reduce(vals.size());
    const SymbolId id{tx, static_cast<std::uint32_t>(vals.size())};
    vals.push_back(v);
    return {id, v};
  }

  Fe value_of(SymbolId id) const {
    const auto& vals = values_[id.tx];
    if (id.seq >= vals.size()) {
      throw Error("symbol id was never drawn");
    }
    return vals[id.seq];
  }

  std::size_t drawn(int tx) const { return values_[tx].size(); }

  std::size_t total_drawn() const {
    return values_[0].size() + values_[1].size() + values_[2].size();
  }

 private:
  MessageSource(const Field& field, bool random, std::uint64_t seed)
      : field_(field), random_(random) {
    for (int tx = 0; tx < 3; ++tx) rng_[tx].seed(derive_seed(seed, tx));
  }

  Field field_;
  bool random_;
  std::optional<std::size_t> limit_;
  std::array<Rng, 3> rng_;
  std::array<std::vector<Fe>, 3> values_;
};

// Joint-coding block layout. Each block carries 19 fresh symbols over its 9
// uses: 6 from transmitter 1, 7 from transmitter 2, 6 from transmitter 3,
// drawn in the canonical order named below. kS1SlotLocal maps each slot to
// the per-transmitter draw index it retransmits (several symbols appear in
// more than one slot; that reuse is what entangles the blocks and lets every
// receiver resolve nine unknowns from nine equations).
inline constexpr std::array<int, 3> kS1FreshCount = {6, 7, 6};

inline constexpr const char* kS1FreshName[3][7] = {
    {"a1", "b1", "c1", "a4", "e1", "b4", nullptr},
    {"a2", "b2", "c2", "f2", "g2", "a5", "b5"},
    {"a3", "b3", "c3", "d3", "a6", "b6", nullptr},
};

// Indexed [slot][tx], slot order A1,B1,C,D,E,F,G,A2,B2.
inline constexpr int kS1SlotLocal[kBlockSlots][3] = {
    {0, 0, 0},  // A1: a1 a2 a3
    {1, 1, 1},  // B1: b1 b2 b3
    {2, 2, 2},  // C : c1 c2 c3
    {3, 2, 3},  // D : a4 c2 d3
    {4, 2, 1},  // E : e1 c2 b3
    {0, 3, 1},  // F : a1 f2 b3
    {3, 4, 5},  // G : a4 g2 b6
    {3, 5, 4},  // A2: a4 a5 a6
    {5, 6, 5},  // B2: b4 b5 b6
};

inline std::string s1_symbol_name(int tx, int local) {
  return kS1FreshName[tx][local];
}

struct TxSymbol {
  SymbolId id;
  Fe value = 0;
};

// What the three transmitters put on the channel in one use; disengaged
// transmitters hold nullopt and send 0.
using SlotTransmission = std::array<std::optional<TxSymbol>, 3>;

struct S1Assignment {
  // Fresh symbols in canonical draw order, per transmitter.
  std::array<std::vector<TxSymbol>, 3> fresh;
  std::array<SlotTransmission, kBlockSlots> slots;
};

inline S1Assignment s1_encode(MessageSource& src) {
  S1Assignment a;
  for (int tx = 0; tx < 3; ++tx) {
    a.fresh[tx].reserve(kS1FreshCount[tx]);
    for (int l = 0; l < kS1FreshCount[tx]; ++l) {
      const auto [id, v] = src.next(tx);
      a.fresh[tx].push_back(TxSymbol{id, v});
    }
  }
  for (int slot = 0; slot < kBlockSlots; ++slot) {
    for (int tx = 0; tx < 3; ++tx) {
      a.slots[slot][tx] = a.fresh[tx][kS1SlotLocal[slot][tx]];
    }
  }
  return a;
}

struct FallbackAssignment {
  SlotTransmission tx;
};

inline FallbackAssignment fallback_encode(const FallbackUse& fu,
                                          MessageSource& src) {
  FallbackAssignment a;
  for (int tx = 0; tx < 3; ++tx) {
    if (tx == fu.silenced_tx) continue;
    const auto [id, v] = src.next(tx);
    a.tx[tx] = TxSymbol{id, v};
  }
  return a;
}

struct ScheduleAssignment {
  std::vector<S1Assignment> blocks;
  std::vector<FallbackAssignment> fallback;
};

inline ScheduleAssignment encode_schedule(const Schedule& sched,
                                          MessageSource& src) {
  ScheduleAssignment a;
  a.blocks.reserve(sched.blocks.size());
  for (std::size_t i = 0; i < sched.blocks.size(); ++i) {
    a.blocks.push_back(s1_encode(src));
  }
  a.fallback.reserve(sched.fallback.size());
  for (const FallbackUse& fu : sched.fallback) {
    a.fallback.push_back(fallback_encode(fu, src));
  }
  return a;
}

// Decoder-side view of the same structure: ids only, no values. Receivers
// know which symbol slots carry (the codebook is public) but not their
// contents.
using SlotIds = std::array<std::optional<SymbolId>, 3>;

struct BlockIds {
  std::array<SlotIds, kBlockSlots> slots{};
};

struct ScheduleIds {
  std::vector<BlockIds> blocks;
  std::vector<SlotIds> fallback;
};

inline ScheduleIds ids_of(const ScheduleAssignment& a) {
  ScheduleIds ids;
  ids.blocks.reserve(a.blocks.size());
  for (const S1Assignment& blk : a.blocks) {
    BlockIds bi;
    for (int slot = 0; slot < kBlockSlots; ++slot) {
      for (int tx = 0; tx < 3; ++tx) {
        if (blk.slots[slot][tx]) bi.slots[slot][tx] = blk.slots[slot][tx]->id;
      }
    }
    ids.blocks.push_back(bi);
  }
  ids.fallback.reserve(a.fallback.size());
  for (const FallbackAssignment& fb : a.fallback) {
    SlotIds si;
    for (int tx = 0; tx < 3; ++tx) {
      if (fb.tx[tx]) si[tx] = fb.tx[tx]->id;
    }
    ids.fallback.push_back(si);
  }
  return ids;
}

// Everything a receiver keeps from one channel use: its received value and
// its own coefficient row (receivers know their incoming coefficients,
// transmitters only the topology).
struct ReceivedUse {
  Fe y = 0;
  std::array<Fe, 3> h_row{};
};

struct Observation {
  std::vector<ReceivedUse> uses;
};

// Expands a schedule plus its assignment into the per-use transmissions.
inline std::vector<SlotTransmission> transmit_plan(
    const Schedule& sched, const ScheduleAssignment& a) {
  std::vector<SlotTransmission> plan(sched.uses);
  for (std::size_t b = 0; b < sched.blocks.size(); ++b) {
    for (int slot = 0; slot < kBlockSlots; ++slot) {
      plan[sched.blocks[b].use[slot]] = a.blocks[b].slots[slot];
    }
  }
  for (std::size_t i = 0; i < sched.fallback.size(); ++i) {
    plan[sched.fallback[i].index] = a.fallback[i].tx;
  }
  return plan;
}

inline std::array<Observation, 3> transmit(const Field& field,
                                           const Schedule& sched,
                                           const ScheduleAssignment& a,
                                           const ChannelRealization& ch) {
  if (ch.uses() != sched.uses) {
    throw ConfigError("channel realization covers " + std::to_string(ch.uses()) +
                      " uses, schedule needs " + std::to_string(sched.uses));
  }
  const std::vector<SlotTransmission> plan = transmit_plan(sched, a);
  std::array<Observation, 3> obs;
  for (auto& o : obs) o.uses.resize(sched.uses);
  for (std::size_t k = 0; k < sched.uses; ++k) {
    std::array<Fe, 3> x{};
    for (int tx = 0; tx < 3; ++tx) {
      if (plan[k][tx]) x[tx] = plan[k][tx]->value;
    }
    const std::array<Fe, 3> y = apply_channel(field, ch.h[k], x);
    for (int rx = 0; rx < 3; ++rx) {
      obs[rx].uses[k] = ReceivedUse{y[rx], ch.h[k][rx]};
    }
  }
  return obs;
}

// Joint decoding of one block at one receiver. The receiver's nine
// observations within the block are linear equations in exactly nine
// unknowns (its own six or seven fresh symbols plus the foreign symbols
// that interfere); the system is built from the public id structure and the
// known coefficient rows and solved over GF(p). Throws SingularSystem if
// the unknowns do not number nine or the matrix has no inverse (neither
// happens for any valid coefficient draw; see the tests that enumerate the
// full coefficient space for p = 3).
inline std::map<SymbolId, Fe> s1_decode(const Field& field, int rx,
                                        const S1Block& block,
                                        const BlockIds& ids,
                                        const Observation& obs) {
  std::vector<SymbolId> unknowns;
  std::map<SymbolId, std::size_t> col_of;
  for (int slot = 0; slot < kBlockSlots; ++slot) {
    const ReceivedUse& ru = obs.uses.at(block.use[slot]);
    for (int tx = 0; tx < 3; ++tx) {
      if (ru.h_row[tx] == 0 || !ids.slots[slot][tx]) continue;
      const SymbolId id = *ids.slots[slot][tx];
      if (col_of.emplace(id, unknowns.size()).second) unknowns.push_back(id);
    }
  }
  if (unknowns.size() != kBlockSlots) {
    throw SingularSystem("receiver " + std::to_string(rx + 1) + " sees " +
                         std::to_string(unknowns.size()) +
                         " unknowns in a block, expected 9");
  }
  Matrix m(kBlockSlots, kBlockSlots);
  std::vector<Fe> b(kBlockSlots, 0);
  for (int slot = 0; slot < kBlockSlots; ++slot) {
    const ReceivedUse& ru = obs.uses.at(block.use[slot]);
    for (int tx = 0; tx < 3; ++tx) {
      if (ru.h_row[tx] == 0 || !ids.slots[slot][tx]) continue;
      const std::size_t c = col_of.at(*ids.slots[slot][tx]);
      // A symbol can enter one equation through one transmitter only, so
      // assignment (not accumulation) is safe here.
      m.at(slot, c) = ru.h_row[tx];
    }
    b[slot] = ru.y;
  }
  std::vector<Fe> x;
  try {
    x = solve_linear_system(field, m, b);
  } catch (const SingularMatrix&) {
    throw SingularSystem("receiver " + std::to_string(rx + 1) +
                         " has a singular block system");
  }
  std::map<SymbolId, Fe> out;
  for (std::size_t i = 0; i < unknowns.size(); ++i) out[unknowns[i]] = x[i];
  return out;
}

// Single-use decoding at one receiver. Succeeds exactly when the receiver's
// direct-link symbol arrives interference free, i.e. every present cross
// link into it originates at the silenced transmitter. With the silencing
// table in use that holds for both active receivers in every state.
inline std::optional<std::pair<SymbolId, Fe>> fallback_decode(
    const Field& field, int rx, const SlotIds& ids, const ReceivedUse& ru) {
  if (!ids[rx]) return std::nullopt;
  for (int tx = 0; tx < 3; ++tx) {
    if (tx != rx && ru.h_row[tx] != 0 && ids[tx]) return std::nullopt;
  }
  if (ru.h_row[rx] == 0) return std::nullopt;
  return std::make_pair(*ids[rx], field.mul(ru.y, field.inv(ru.h_row[rx])));
}

// Per-receiver decoding of a whole schedule. recovered[rx] holds everything
// receiver rx solved for, own and foreign symbols alike; verdicts are filled
// by the verification step that has access to the transmitted truth.
struct DecodeResult {
  std::array<std::map<SymbolId, Fe>, 3> recovered;
  std::array<bool, 3> verdict{};
};

inline DecodeResult decode_schedule(const Field& field, const Schedule& sched,
                                    const ScheduleIds& ids,
                                    const std::array<Observation, 3>& obs) {
  DecodeResult r;
  for (int rx = 0; rx < 3; ++rx) {
    for (std::size_t b = 0; b < sched.blocks.size(); ++b) {
      auto solved = s1_decode(field, rx, sched.blocks[b], ids.blocks[b], obs[rx]);
      r.recovered[rx].merge(solved);
    }
    for (std::size_t i = 0; i < sched.fallback.size(); ++i) {
      const auto got = fallback_decode(field, rx, ids.fallback[i],
                                       obs[rx].uses.at(sched.fallback[i].index));
      if (got) r.recovered[rx][got->first] = got->second;
    }
  }
  return r;
}

}  // namespace altic

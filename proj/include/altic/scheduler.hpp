#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "channel.hpp"
#include "rational.hpp"

namespace altic {

// One joint-coding block spans nine channel uses with these roles. States A
// and B each appear twice per block (first and second visit), the other five
// once. Roles are listed in the canonical slot order used everywhere below.
enum class Role : int { A1 = 0, B1, C, D, E, F, G, A2, B2 };

inline constexpr int kBlockSlots = 9;

inline constexpr std::array<Role, kBlockSlots> kAllRoles = {
    Role::A1, Role::B1, Role::C, Role::D, Role::E,
    Role::F,  Role::G,  Role::A2, Role::B2};

inline constexpr StateId role_state(Role r) {
  constexpr StateId s[kBlockSlots] = {StateId::A, StateId::B, StateId::C,
                                      StateId::D, StateId::E, StateId::F,
                                      StateId::G, StateId::A, StateId::B};
  return s[static_cast<int>(r)];
}

inline std::string_view role_name(Role r) {
  constexpr std::string_view names[kBlockSlots] = {"A1", "B1", "C", "D", "E",
                                                   "F",  "G",  "A2", "B2"};
  return names[static_cast<int>(r)];
}

// Channel-use index assigned to each slot of one block.
struct S1Block {
  std::array<std::size_t, kBlockSlots> use{};

  std::size_t at(Role r) const { return use[static_cast<int>(r)]; }
};

// A channel use served by the single-use fallback: one transmitter stays
// silent, the other two send one fresh symbol each on clean direct links.
struct FallbackUse {
  std::size_t index = 0;
  StateId state = StateId::A;
  int silenced_tx = 0;
};

// Which transmitter the fallback silences in each state. Chosen so that in
// every state both active receivers see zero interference: the only cross
// links into them originate at the silenced transmitter.
inline constexpr int fallback_silenced_tx(StateId s) {
  constexpr int tx[kNumStates] = {0, 2, 1, 0, 1, 2, 0};
  return tx[index_of(s)];
}

struct Schedule {
  std::size_t uses = 0;
  std::vector<S1Block> blocks;
  std::vector<FallbackUse> fallback;
};

// The capacity increment above the baseline of 2 symbols per use. States A
// and B are needed twice per block, so their probabilities count half.
inline Rational lambda_of(const StateDistribution& dist) {
  dist.validate();
  const Rational half(1, 2);
  Rational lam = dist[StateId::A] * half;
  lam = min(lam, dist[StateId::B] * half);
  lam = min(lam, dist[StateId::C]);
  lam = min(lam, dist[StateId::D]);
  lam = min(lam, dist[StateId::E]);
  lam = min(lam, dist[StateId::F]);
  lam = min(lam, dist[StateId::G]);
  return lam;
}

// Greedy block former: as many joint-coding blocks as the trace supports
// (A and B contribute two slots per block), every use left over served by
// the fallback. Block slots take each state's occurrences in time order.
inline Schedule build_schedule(const StateTrace& trace) {
  std::array<std::vector<std::size_t>, kNumStates> by_state;
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    by_state[index_of(trace.states[k])].push_back(k);
  }

  const auto& a = by_state[index_of(StateId::A)];
  const auto& b = by_state[index_of(StateId::B)];
  std::size_t nblocks = std::min(a.size() / 2, b.size() / 2);
  for (StateId s : {StateId::C, StateId::D, StateId::E, StateId::F, StateId::G}) {
    nblocks = std::min(nblocks, by_state[index_of(s)].size());
  }

  Schedule sched;
  sched.uses = trace.states.size();
  sched.blocks.reserve(nblocks);
  std::array<std::size_t, kNumStates> consumed{};
  for (std::size_t i = 0; i < nblocks; ++i) {
    S1Block blk;
    for (Role r : kAllRoles) {
      const int s = index_of(role_state(r));
      blk.use[static_cast<int>(r)] = by_state[s][consumed[s]++];
    }
    sched.blocks.push_back(blk);
  }
  for (int s = 0; s < kNumStates; ++s) {
    for (std::size_t i = consumed[s]; i < by_state[s].size(); ++i) {
      sched.fallback.push_back(FallbackUse{
          by_state[s][i], kAllStates[s], fallback_silenced_tx(kAllStates[s])});
    }
  }
  std::sort(sched.fallback.begin(), sched.fallback.end(),
            [](const FallbackUse& x, const FallbackUse& y) {
              return x.index < y.index;
            });
  return sched;
}

// Fresh symbols carried by a schedule: 19 per block, 2 per fallback use.
inline constexpr std::size_t kSymbolsPerBlock = 19;
inline constexpr std::size_t kSymbolsPerFallback = 2;

inline std::size_t count_symbols(const Schedule& sched) {
  return kSymbolsPerBlock * sched.blocks.size() +
         kSymbolsPerFallback * sched.fallback.size();
}

}  // namespace altic

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace altic {

// Connectivity states of the 3-user channel. Each use of the channel is in
// exactly one state; a state fixes which cross links exist (direct links
// 1->1, 2->2, 3->3 are always present). The cross-link sets are:
//   A: {1->3}
//   B: {3->1}
//   C: {2->3}
//   D: {1->3, 2->1, 1->2}
//   E: {2->3, 2->1, 3->2}
//   F: {1->3, 3->1, 3->2}
//   G: {1->3, 3->1, 1->2}
// Links are written tx->rx with 1-based user ids in comments; code uses
// 0-based indices throughout.
enum class StateId : int { A = 0, B, C, D, E, F, G };

inline constexpr int kNumStates = 7;

inline constexpr std::array<StateId, kNumStates> kAllStates = {
    StateId::A, StateId::B, StateId::C, StateId::D,
    StateId::E, StateId::F, StateId::G};

inline constexpr int index_of(StateId s) { return static_cast<int>(s); }

inline std::string_view state_name(StateId s) {
  constexpr std::string_view names[kNumStates] = {"A", "B", "C", "D",
                                                  "E", "F", "G"};
  return names[index_of(s)];
}

inline StateId state_from_name(std::string_view name) {
  for (StateId s : kAllStates) {
    if (state_name(s) == name) return s;
  }
  throw ConfigError("unknown state name: " + std::string(name));
}

// Set of present links, one bit per (tx, rx) pair.
class LinkSet {
 public:
  constexpr LinkSet() = default;

  static constexpr LinkSet direct_only() {
    LinkSet l;
    l.bits_ = bit(0, 0) | bit(1, 1) | bit(2, 2);
    return l;
  }

  constexpr LinkSet with(int tx, int rx) const {
    LinkSet l = *this;
    l.bits_ |= bit(tx, rx);
    return l;
  }

  constexpr bool has(int tx, int rx) const { return bits_ & bit(tx, rx); }

  constexpr int count() const {
    int c = 0;
    for (int b = 0; b < 9; ++b) c += (bits_ >> b) & 1;
    return c;
  }

  friend constexpr bool operator==(LinkSet a, LinkSet b) {
    return a.bits_ == b.bits_;
  }

 private:
  static constexpr std::uint16_t bit(int tx, int rx) {
    return static_cast<std::uint16_t>(1u << (3 * tx + rx));
  }
  std::uint16_t bits_ = 0;
};

inline constexpr LinkSet state_links(StateId s) {
  constexpr LinkSet d = LinkSet::direct_only();
  switch (s) {
    case StateId::A: return d.with(0, 2);
    case StateId::B: return d.with(2, 0);
    case StateId::C: return d.with(1, 2);
    case StateId::D: return d.with(0, 2).with(1, 0).with(0, 1);
    case StateId::E: return d.with(1, 2).with(1, 0).with(2, 1);
    case StateId::F: return d.with(0, 2).with(2, 0).with(2, 1);
    case StateId::G: return d.with(0, 2).with(2, 0).with(0, 1);
  }
  return d;
}

// Probability of each state, exact. Must sum to one.
struct StateDistribution {
  std::array<Rational, kNumStates> prob{};

  Rational operator[](StateId s) const { return prob[index_of(s)]; }

  void validate() const {
    Rational sum;
    for (const Rational& q : prob) {
      if (q < Rational(0) || q > Rational(1)) {
        throw InvalidDistribution("state probability outside [0,1]: " + q.str());
      }
      sum = sum + q;
    }
    if (sum != Rational(1)) {
      throw InvalidDistribution("state probabilities sum to " + sum.str() +
                                ", expected 1");
    }
  }

  static StateDistribution uniform() {
    StateDistribution d;
    d.prob.fill(Rational(1, 7));
    return d;
  }

  // The distribution that maximizes sum capacity: A and B twice as likely as
  // the rest, giving capacity 19/9 symbols per use.
  static StateDistribution capacity_maximizing() {
    StateDistribution d;
    d.prob = {Rational(2, 9), Rational(2, 9), Rational(1, 9), Rational(1, 9),
              Rational(1, 9), Rational(1, 9), Rational(1, 9)};
    return d;
  }
};

// The state of every channel use, in time order.
struct StateTrace {
  std::vector<StateId> states;

  std::size_t uses() const { return states.size(); }

  std::array<std::size_t, kNumStates> counts() const {
    std::array<std::size_t, kNumStates> c{};
    for (StateId s : states) ++c[index_of(s)];
    return c;
  }
};

// Draws an i.i.d. trace by inverse CDF. The uniform variate is a 64-bit
// integer and the comparison against the exact rational CDF is done in
// 128-bit integers, so the draw is reproducible and bias is bounded by
// 2^-64 per state.
inline StateTrace sample_trace(const StateDistribution& dist, std::size_t n,
                               std::uint64_t seed) {
  dist.validate();
  std::array<Rational, kNumStates> cdf;
  Rational acc;
  for (int i = 0; i < kNumStates; ++i) {
    acc = acc + dist.prob[i];
    cdf[i] = acc;
  }
  Rng rng(seed);
  StateTrace trace;
  trace.states.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t x = rng();
    int chosen = kNumStates - 1;
    for (int i = 0; i < kNumStates; ++i) {
      // x / 2^64 < cdf[i]  <=>  x * den < num * 2^64
      const unsigned __int128 lhs =
          static_cast<unsigned __int128>(x) * static_cast<std::uint64_t>(cdf[i].den());
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(static_cast<std::uint64_t>(cdf[i].num()))
          << 64;
      if (lhs < rhs) {
        chosen = i;
        break;
      }
    }
    trace.states.push_back(kAllStates[chosen]);
  }
  return trace;
}

// Deterministic trace holding exactly n*prob[s] uses of each state, laid out
// as consecutive runs in state order. Requires every n*prob[s] to be an
// integer.
// Canonical order: all uses of A, then B, and so on. Decoding never depends
// on the order, so any fixed choice works; this one is easy to audit.
inline StateTrace make_proportional_trace(
    const std::array<std::size_t, kNumStates>& counts) {
  StateTrace trace;
  std::size_t n = 0;
  for (std::size_t c : counts) n += c;
  trace.states.reserve(n);
  for (StateId s : kAllStates) {
    for (std::size_t i = 0; i < counts[index_of(s)]; ++i) {
      trace.states.push_back(s);
    }
  }
  return trace;
}

// Convenience form: counts n * dist[s], which must all be integers.
inline StateTrace make_proportional_trace(const StateDistribution& dist,
                                          std::size_t n) {
  dist.validate();
  std::array<std::size_t, kNumStates> counts{};
  for (StateId s : kAllStates) {
    const Rational count = dist[s] * Rational(static_cast<std::int64_t>(n));
    if (count.den() != 1) {
      throw ConfigError("n * prob[" + std::string(state_name(s)) +
                        "] = " + count.str() + " is not an integer");
    }
    counts[index_of(s)] = static_cast<std::size_t>(count.num());
  }
  return make_proportional_trace(counts);
}

// Coefficients of one channel use: h[rx][tx], zero exactly on absent links.
using CoeffMatrix = std::array<std::array<Fe, 3>, 3>;

struct ChannelRealization {
  std::vector<CoeffMatrix> h;

  std::size_t uses() const { return h.size(); }
};

// Draws every present link's coefficient uniformly from {1, .., p-1}.
// Iteration order (use, then rx, then tx) is part of the reproducibility
// contract.
inline ChannelRealization sample_channel(const StateTrace& trace,
                                         const Field& field,
                                         std::uint64_t seed) {
  Rng rng(seed);
  ChannelRealization ch;
  ch.h.reserve(trace.uses());
  for (StateId s : trace.states) {
    const LinkSet links = state_links(s);
    CoeffMatrix m{};
    for (int rx = 0; rx < 3; ++rx) {
      for (int tx = 0; tx < 3; ++tx) {
        if (links.has(tx, rx)) {
          m[rx][tx] = static_cast<Fe>(1 + uniform_below(rng, field.p() - 1));
        }
      }
    }
    ch.h.push_back(m);
  }
  return ch;
}

// One channel use: y[rx] = sum_tx h[rx][tx] * x[tx].
inline std::array<Fe, 3> apply_channel(const Field& field,
                                       const CoeffMatrix& h,
                                       const std::array<Fe, 3>& x) {
  std::array<Fe, 3> y{};
  for (int rx = 0; rx < 3; ++rx) {
    Fe acc = 0;
    for (int tx = 0; tx < 3; ++tx) {
      acc = field.add(acc, field.mul(h[rx][tx], x[tx]));
    }
    y[rx] = acc;
  }
  return y;
}

}  // namespace altic

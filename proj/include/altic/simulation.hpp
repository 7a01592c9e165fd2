#pragma once

#include <cstdint>

#include "bounds.hpp"
#include "channel.hpp"
#include "codec.hpp"
#include "scheduler.hpp"

namespace altic {

// Independent seeds for the three random inputs of one experiment. Fixing
// one while varying the others isolates each source of randomness.
struct SimSeeds {
  std::uint64_t trace = 1;
  std::uint64_t channel = 2;
  std::uint64_t message = 3;
};

// Full pipeline on a given trace: schedule, encode, push through a sampled
// channel, decode at all three receivers, verify against the message truth.
inline RateReport run_trace(const StateTrace& trace,
                            const StateDistribution& dist, const Field& field,
                            SimSeeds seeds) {
  const Schedule sched = build_schedule(trace);
  MessageSource src = MessageSource::random(field, seeds.message);
  const ScheduleAssignment assignment = encode_schedule(sched, src);
  const ChannelRealization ch = sample_channel(trace, field, seeds.channel);
  const std::array<Observation, 3> obs = transmit(field, sched, assignment, ch);
  DecodeResult dec = decode_schedule(field, sched, ids_of(assignment), obs);

  for (int rx = 0; rx < 3; ++rx) {
    bool ok = true;
    const auto check = [&](const TxSymbol& ts) {
      const auto it = dec.recovered[rx].find(ts.id);
      if (it == dec.recovered[rx].end() || it->second != ts.value) ok = false;
    };
    for (const S1Assignment& blk : assignment.blocks) {
      for (const TxSymbol& ts : blk.fresh[rx]) check(ts);
    }
    for (const FallbackAssignment& fb : assignment.fallback) {
      if (fb.tx[rx]) check(*fb.tx[rx]);
    }
    dec.verdict[rx] = ok;
  }

  RateReport rep;
  rep.uses = sched.uses;
  rep.blocks = sched.blocks.size();
  rep.fallback_uses = sched.fallback.size();
  rep.symbols = count_symbols(sched);
  rep.achieved_spcu =
      rep.uses == 0 ? Rational(0)
                    : Rational(static_cast<std::int64_t>(rep.symbols),
                               static_cast<std::int64_t>(rep.uses));
  rep.achieved_bits = rep.achieved_spcu.to_double() * field.bits_per_symbol();
  rep.capacity_spcu = sum_capacity_spcu(dist);
  rep.capacity_bits = rep.capacity_spcu.to_double() * field.bits_per_symbol();
  rep.genie_b_spcu = genie_bound_b_spcu(dist);
  rep.genie_rest_spcu = genie_bound_rest_spcu(dist);
  rep.baseline_spcu = baseline_separate_spcu();
  rep.verdicts = dec.verdict;
  return rep;
}

// Monte-Carlo experiment: i.i.d. trace drawn from the distribution.
inline RateReport run_end_to_end(const StateDistribution& dist, std::size_t n,
                                 const Field& field, SimSeeds seeds) {
  return run_trace(sample_trace(dist, n, seeds.trace), dist, field, seeds);
}

// Deterministic experiment on the exact-proportions trace; requires every
// n * prob[s] to be an integer.
inline RateReport run_proportional(const StateDistribution& dist, std::size_t n,
                                   const Field& field, SimSeeds seeds) {
  return run_trace(make_proportional_trace(dist, n), dist, field, seeds);
}

}  // namespace altic

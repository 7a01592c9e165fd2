#pragma once

#include <array>
#include <cstddef>

#include "channel.hpp"
#include "gf.hpp"
#include "rational.hpp"
#include "scheduler.hpp"

namespace altic {

// Sum capacity in symbols per channel use: 2 + lambda. Multiply by
// log2(p) for bits.
inline Rational sum_capacity_spcu(const StateDistribution& dist) {
  return Rational(2) + lambda_of(dist);
}

inline double sum_capacity_bits(const StateDistribution& dist,
                                const Field& field) {
  return sum_capacity_spcu(dist).to_double() * field.bits_per_symbol();
}

// Converse side. Two genie-aided arguments each bound the sum rate; their
// minimum meets the achievable rate exactly.
//
// First bound: enhance every state except B until it looks like B's
// one-cross-link structure, giving 2 + prob(B)/2.
inline Rational genie_bound_b_spcu(const StateDistribution& dist) {
  dist.validate();
  return Rational(2) + dist[StateId::B] * Rational(1, 2);
}

// Second bound: the same argument run against the remaining states, giving
// 2 + min(prob(A)/2, prob(C), prob(D), prob(E), prob(F), prob(G)).
inline Rational genie_bound_rest_spcu(const StateDistribution& dist) {
  dist.validate();
  const Rational half(1, 2);
  Rational m = dist[StateId::A] * half;
  m = min(m, dist[StateId::C]);
  m = min(m, dist[StateId::D]);
  m = min(m, dist[StateId::E]);
  m = min(m, dist[StateId::F]);
  m = min(m, dist[StateId::G]);
  return Rational(2) + m;
}

inline Rational combined_bound_spcu(const StateDistribution& dist) {
  return min(genie_bound_b_spcu(dist), genie_bound_rest_spcu(dist));
}

// What separate coding per state achieves: each state on its own is a
// normal interference channel worth 2 symbols per use, so ignoring the
// alternation leaves exactly 2 regardless of the distribution.
inline Rational baseline_separate_spcu() { return Rational(2); }

inline double baseline_separate_bits(const Field& f) {
  return baseline_separate_spcu().to_double() * f.bits_per_symbol();
}

inline double genie_bound_b_bits(const StateDistribution& d, const Field& f) {
  return genie_bound_b_spcu(d).to_double() * f.bits_per_symbol();
}

inline double genie_bound_rest_bits(const StateDistribution& d, const Field& f) {
  return genie_bound_rest_spcu(d).to_double() * f.bits_per_symbol();
}

inline double combined_bound_bits(const StateDistribution& d, const Field& f) {
  return combined_bound_spcu(d).to_double() * f.bits_per_symbol();
}

// Outcome of one end-to-end experiment, rates exact where possible.
struct RateReport {
  std::size_t uses = 0;
  std::size_t blocks = 0;
  std::size_t fallback_uses = 0;
  std::size_t symbols = 0;

  Rational achieved_spcu;
  double achieved_bits = 0;
  Rational capacity_spcu;
  double capacity_bits = 0;
  Rational genie_b_spcu;
  Rational genie_rest_spcu;
  Rational baseline_spcu;

  std::array<bool, 3> verdicts{};

  bool decoded() const { return verdicts[0] && verdicts[1] && verdicts[2]; }
};

}  // namespace altic

#pragma once

#include <string>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace altic {

// A one-dimensional family of distributions: the varied state's probability
// walks an exact rational grid from `from` to `to`; the other six states
// keep their relative proportions and absorb the remainder.
struct SweepSpec {
  StateId vary = StateId::G;
  Rational from;
  Rational to;
  int steps = 2;
};

inline std::vector<Rational> sweep_grid_values(const SweepSpec& spec) {
  if (spec.steps < 1) throw ConfigError("sweep needs at least one step");
  if (spec.from < Rational(0) || spec.from > Rational(1) ||
      spec.to < Rational(0) || spec.to > Rational(1)) {
    throw ConfigError("sweep endpoints must lie in [0,1]");
  }
  std::vector<Rational> t;
  t.reserve(spec.steps);
  if (spec.steps == 1) {
    t.push_back(spec.from);
    return t;
  }
  const Rational delta = (spec.to - spec.from) / Rational(spec.steps - 1);
  for (int i = 0; i < spec.steps; ++i) {
    t.push_back(spec.from + delta * Rational(i));
  }
  return t;
}

inline StateDistribution reweighted(const StateDistribution& base, StateId vary,
                                    const Rational& t) {
  const Rational b = base[vary];
  if (b == Rational(1)) {
    throw ConfigError("cannot rebalance a sweep around a point mass on " +
                      std::string(state_name(vary)));
  }
  const Rational scale = (Rational(1) - t) / (Rational(1) - b);
  StateDistribution d = base;
  for (int i = 0; i < kNumStates; ++i) {
    d.prob[i] = i == index_of(vary) ? t : base.prob[i] * scale;
  }
  d.validate();
  return d;
}

inline std::vector<StateDistribution> sweep_grid(const StateDistribution& base,
                                                 const SweepSpec& spec) {
  base.validate();
  std::vector<StateDistribution> grid;
  for (const Rational& t : sweep_grid_values(spec)) {
    grid.push_back(reweighted(base, spec.vary, t));
  }
  return grid;
}

}  // namespace altic

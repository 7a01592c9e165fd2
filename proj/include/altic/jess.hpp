#pragma once

#include <array>
#include <cstdint>

#include "channel.hpp"
#include "gf.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace altic {

// Standalone demonstration of joint encoding across states on the cyclic
// 3-state example: three single-cross-link states
//   I1: {2->1}   I2: {3->2}   I3: {1->3}
// plus one resolving state R carrying all three cross links at once. Each
// transmitter sends a fresh symbol in every I-use; in the R-use the three
// transmitters repeat, in order, symbols w1, u2, v3 (transmitter i's symbol
// from use I_{(i-1 mod 3)+...}), which lets every receiver peel its two
// entangled observations. 9 fresh symbols over 4 uses.

struct JessChannel {
  // Coefficients for uses I1, I2, I3, R in that order.
  std::array<CoeffMatrix, 4> h{};
};

inline constexpr LinkSet jess_links(int use) {
  constexpr int cross_tx[3] = {1, 2, 0};  // 2->1, 3->2, 1->3
  constexpr int cross_rx[3] = {0, 1, 2};
  LinkSet l = LinkSet::direct_only();
  if (use == 3) {
    for (int i = 0; i < 3; ++i) l = l.with(cross_tx[i], cross_rx[i]);
  } else {
    l = l.with(cross_tx[use], cross_rx[use]);
  }
  return l;
}

inline JessChannel sample_jess_channel(const Field& field, std::uint64_t seed) {
  Rng rng(seed);
  JessChannel ch;
  for (int use = 0; use < 4; ++use) {
    const LinkSet links = jess_links(use);
    for (int rx = 0; rx < 3; ++rx) {
      for (int tx = 0; tx < 3; ++tx) {
        if (links.has(tx, rx)) {
          ch.h[use][rx][tx] = static_cast<Fe>(1 + uniform_below(rng, field.p() - 1));
        }
      }
    }
  }
  return ch;
}

inline JessChannel unit_jess_channel() {
  JessChannel ch;
  for (int use = 0; use < 4; ++use) {
    const LinkSet links = jess_links(use);
    for (int rx = 0; rx < 3; ++rx) {
      for (int tx = 0; tx < 3; ++tx) {
        if (links.has(tx, rx)) ch.h[use][rx][tx] = 1;
      }
    }
  }
  return ch;
}

// sym[tx][k] is transmitter tx's fresh symbol for use I_{k+1}. Receiver j
// wants all three symbols of transmitter j.
struct JessMessages {
  std::array<std::array<Fe, 3>, 3> sym{};
};

inline JessMessages sample_jess_messages(const Field& field,
                                         std::uint64_t seed) {
  Rng rng(seed);
  JessMessages m;
  for (int tx = 0; tx < 3; ++tx) {
    for (int k = 0; k < 3; ++k) {
      m.sym[tx][k] = static_cast<Fe>(uniform_below(rng, field.p()));
    }
  }
  return m;
}

struct JessReport {
  int symbols = 9;
  int uses = 4;
  Rational rate{9, 4};
  // All nine symbols recovered correctly using the resolving use.
  bool decoded_all = false;
  // Desired symbols each receiver can already decode from the three isolated
  // uses alone (interference-free observations), out of 9.
  int decoded_without_resolver = 0;
};

inline JessReport run_cyclic_jess(const Field& f, const JessChannel& ch,
                                  const JessMessages& m) {
  // What goes on the air: x[use][tx].
  std::array<std::array<Fe, 3>, 4> x{};
  for (int k = 0; k < 3; ++k) {
    for (int tx = 0; tx < 3; ++tx) x[k][tx] = m.sym[tx][k];
  }
  // Resolving use: transmitter i repeats sym[i][(i + 2) % 3] (w1, u2, v3).
  for (int tx = 0; tx < 3; ++tx) x[3][tx] = m.sym[tx][(tx + 2) % 3];

  std::array<std::array<Fe, 3>, 4> y{};
  for (int use = 0; use < 4; ++use) {
    y[use] = apply_channel(f, ch.h[use], x[use]);
  }

  JessReport rep;

  // Count of desired symbols recoverable from I-uses alone: receiver rx
  // decodes its use-k observation iff no cross link reaches it in use k.
  int clean = 0;
  for (int rx = 0; rx < 3; ++rx) {
    for (int use = 0; use < 3; ++use) {
      bool interference = false;
      for (int tx = 0; tx < 3; ++tx) {
        if (tx != rx && ch.h[use][rx][tx] != 0) interference = true;
      }
      if (interference) continue;
      const Fe dec = f.mul(y[use][rx], f.inv(ch.h[use][rx][rx]));
      if (dec == m.sym[rx][use]) ++clean;
    }
  }
  rep.decoded_without_resolver = clean;

  // Full decoding, receiver by receiver. cross_tx[rx] is the transmitter
  // whose cross link reaches rx (in use rx and in the resolving use).
  constexpr int cross_tx[3] = {1, 2, 0};
  bool ok = true;
  for (int rx = 0; rx < 3; ++rx) {
    std::array<Fe, 3> dec{};  // dec[k] = decoded sym[rx][k]
    // The two clean I-uses give two desired symbols directly.
    for (int use = 0; use < 3; ++use) {
      if (use == rx) continue;
      dec[use] = f.mul(y[use][rx], f.inv(ch.h[use][rx][rx]));
    }
    // The resolving use carries h_dd * sym[rx][(rx+2)%3] + h_dc * (the
    // symbol that also interferes in use rx). The first term involves a
    // symbol already decoded above, so it can be cancelled.
    const int ctx = cross_tx[rx];
    const Fe known = f.mul(ch.h[3][rx][rx], dec[(rx + 2) % 3]);
    const Fe foreign = f.mul(f.sub(y[3][rx], known), f.inv(ch.h[3][rx][ctx]));
    // foreign is transmitter ctx's symbol from use rx; subtract it there.
    dec[rx] = f.mul(f.sub(y[rx][rx], f.mul(ch.h[rx][rx][ctx], foreign)),
                    f.inv(ch.h[rx][rx][rx]));
    for (int k = 0; k < 3; ++k) {
      if (dec[k] != m.sym[rx][k]) ok = false;
    }
  }
  rep.decoded_all = ok;
  return rep;
}

inline JessReport cyclic_jess_demo(const Field& field, std::uint64_t seed) {
  const JessChannel ch = sample_jess_channel(field, derive_seed(seed, 0));
  const JessMessages m = sample_jess_messages(field, derive_seed(seed, 1));
  return run_cyclic_jess(field, ch, m);
}

}  // namespace altic

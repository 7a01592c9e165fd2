#pragma once

// Umbrella header for the whole library: exact arithmetic over GF(p),
// the seven-state alternating channel model, the joint-coding scheduler and
// codec, the converse bounds, and the end-to-end simulation pipeline.

#include "bounds.hpp"     // IWYU pragma: export
#include "channel.hpp"    // IWYU pragma: export
#include "codec.hpp"      // IWYU pragma: export
#include "errors.hpp"     // IWYU pragma: export
#include "gf.hpp"         // IWYU pragma: export
#include "jess.hpp"       // IWYU pragma: export
#include "rational.hpp"   // IWYU pragma: export
#include "rng.hpp"        // IWYU pragma: export
#include "scheduler.hpp"  // IWYU pragma: export
#include "simulation.hpp" // IWYU pragma: export

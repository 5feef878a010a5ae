#pragma once

/// Umbrella header pulling in the whole public API.

#include "ggism/disutility.hpp"
#include "ggism/gale_shapley.hpp"
#include "ggism/instance.hpp"
#include "ggism/lp.hpp"
#include "ggism/lp_rounding.hpp"
#include "ggism/matching.hpp"
#include "ggism/rational.hpp"
#include "ggism/reduction.hpp"
#include "ggism/rotations.hpp"
#include "ggism/two_sat.hpp"
#include "ggism/weights.hpp"
#include "ggism/xp.hpp"

#pragma once

// Self-normalized block sampling for the mean of a stationary series,
// with simulation models, block-size diagnostics and a Monte Carlo
// coverage harness.

#include "snbs/advisor.hpp"
#include "snbs/block_stats.hpp"
#include "snbs/confidence.hpp"
#include "snbs/csv.hpp"
#include "snbs/ecdf.hpp"
#include "snbs/errors.hpp"
#include "snbs/fft.hpp"
#include "snbs/generators.hpp"
#include "snbs/math_util.hpp"
#include "snbs/mc.hpp"
#include "snbs/rng.hpp"
#include "snbs/series.hpp"
#include "snbs/special.hpp"

#pragma once

// Umbrella header.

#include "nflc/analysis.hpp"
#include "nflc/bigint.hpp"
#include "nflc/code_params.hpp"
#include "nflc/codec.hpp"
#include "nflc/errors.hpp"
#include "nflc/json_io.hpp"
#include "nflc/modarith.hpp"
#include "nflc/number_field.hpp"
#include "nflc/polymod.hpp"
#include "nflc/primes.hpp"
#include "nflc/sim.hpp"
#include "nflc/wire.hpp"

#pragma once

// Umbrella header for the full library.

#include "muir/tolerances.hpp"
#include "muir/qcore.hpp"
#include "muir/info.hpp"
#include "muir/ga.hpp"
#include "muir/coefficients.hpp"
#include "muir/relations.hpp"
#include "muir/scenarios.hpp"
#include "muir/search.hpp"
#include "muir/scenario_io.hpp"

#pragma once

// Everything: exact arithmetic in Z[beta], beta-expansions, local digit
// conversions, the quadratic eliminations, block adders and bounds.

#include "betapar/algebraic.hpp"
#include "betapar/analysis_bounds.hpp"
#include "betapar/block_parallel.hpp"
#include "betapar/digit_string.hpp"
#include "betapar/gde_quadratic.hpp"
#include "betapar/local_conversion.hpp"
#include "betapar/numeration.hpp"

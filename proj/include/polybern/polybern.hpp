#pragma once

// Umbrella header: exact poly-Bernoulli computation and verification.

#include "polybern/rational.hpp"
#include "polybern/combinatorics.hpp"
#include "polybern/bernoulli.hpp"
#include "polybern/residue_ring.hpp"
#include "polybern/series.hpp"
#include "polybern/poly_bernoulli.hpp"
#include "polybern/polylog.hpp"
#include "polybern/star.hpp"
#include "polybern/congruence.hpp"
#include "polybern/verify.hpp"
#include "polybern/io.hpp"

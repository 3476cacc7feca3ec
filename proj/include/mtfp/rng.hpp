#pragma once

#include <random>

namespace mtfp {

/// The one generator type used by every randomized component, so a seed
/// fully determines a run on a given standard library.
using Rng = std::mt19937_64;

} // namespace mtfp

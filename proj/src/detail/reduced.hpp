#pragma once

#include "detail/ext_math.hpp"
#include "msharp/means.hpp"

namespace msharp::detail {

ext profile_ext(MeanKind kind, ext x);

/// ln m(x); no cancellation for small x.
ext log_profile_ext(MeanKind kind, ext x);

/// ln m(x) / x^2 for x > 0.
ext log_profile_over_y_ext(MeanKind kind, ext x);

/// p log1p(u x^2) - ln m(x)
ext log_gap_ext(MeanKind kind, ext x, ext u, ext p);

/// (p log1p(u x^2) - ln m(x)) / x^2 for x > 0.
ext log_gap_over_y_ext(MeanKind kind, ext x, ext u, ext p);

}  // namespace msharp::detail

#pragma once

#include <span>
#include <utility>

namespace cinerank {

/// Mean of |predicted - actual| over (predicted, actual) pairs. Throws
/// std::invalid_argument on an empty list.
double mae(std::span<const std::pair<double, double>> predictions);

}  // namespace cinerank

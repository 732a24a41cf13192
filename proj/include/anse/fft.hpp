#pragma once

#include "anse/grid.hpp"

#include <complex>
#include <span>

namespace anse::fft {

enum class Direction { forward, backward };

/// In-place 3D complex transform over the grid layout.
///
/// forward computes c_xi = (1/N) sum_x f(x) e^{-i xi.x}; backward evaluates
/// f(x) = sum_xi c_xi e^{i xi.x}. Plans are cached per shape and shared by
/// all threads; execution is reentrant.
void transform(std::span<std::complex<double>> data, const Grid& grid, Direction dir);

} // namespace anse::fft

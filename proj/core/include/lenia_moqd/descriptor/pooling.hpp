#pragma once

#include <lenia_moqd/lenia/grid.hpp>

#include <Eigen/Core>

namespace lenia_moqd::descriptor {

/// Average-pools every channel to size x size and flattens channel-major.
/// Height and width must be multiples of `size`.
Eigen::VectorXf pool_frame(const lenia::GridState& frame, int size);

/// Length of pool_frame's output for a grid shape.
int pooled_length(const lenia::GridShape& shape, int size);

} // namespace lenia_moqd::descriptor

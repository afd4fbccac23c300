#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace dphg {

using Index = Eigen::Index;
using NodeId = std::int32_t;

// Dense real matrices are stored row-per-entity: an n x d feature matrix has one
// row per hypernode.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using Mask = std::vector<bool>;

}  // namespace dphg

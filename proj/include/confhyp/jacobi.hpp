#pragma once

#include "confhyp/core.hpp"

namespace confhyp {

struct SymmetricEigen {
  Vec values;   // descending
  Mat vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

/// Cyclic Jacobi rotations for small dense symmetric matrices. Input is
/// symmetrised first; callers are expected to have checked symmetry.
SymmetricEigen jacobi_eigen(const Mat& a, int max_sweeps = 64);

/// a^(-1/2) for symmetric positive definite a.
Mat inverse_sqrt_spd(const Mat& a);

}  // namespace confhyp

// Copyright 2026 The srlaser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srlaser/kernels.hpp"

#include "srlaser/errors.hpp"

#include <omp.h>

namespace srl::kernels {

namespace {

void check_shapes(const RowMajorSparse& m, std::span<const cd> x, std::span<cd> y) {
  if (static_cast<Index>(x.size()) != m.cols() || static_cast<Index>(y.size()) != m.rows()) {
    throw DimensionError("spmv: vector sizes do not match the matrix");
  }
}

inline cd row_dot(const RowMajorSparse& m, Index row, const cd* x) {
  const cd* values = m.valuePtr();
  const auto* cols = m.innerIndexPtr();
  const auto* outer = m.outerIndexPtr();
  cd acc = 0.0;
  for (auto k = outer[row]; k < outer[row + 1]; ++k) {
    acc += values[k] * x[cols[k]];
  }
  return acc;
}

}  // namespace

void spmv_serial(const RowMajorSparse& m, std::span<const cd> x, std::span<cd> y) {
  check_shapes(m, x, y);
  const Index rows = m.rows();
  for (Index r = 0; r < rows; ++r) {
    y[r] = row_dot(m, r, x.data());
  }
}

void spmv_parallel(const RowMajorSparse& m, std::span<const cd> x, std::span<cd> y, Index min_parallel_rows) {
  check_shapes(m, x, y);
  const Index rows = m.rows();
  if (rows < min_parallel_rows || omp_in_parallel()) {
    for (Index r = 0; r < rows; ++r) y[r] = row_dot(m, r, x.data());
    return;
  }
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < rows; ++r) {
    y[r] = row_dot(m, r, x.data());
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace srl::kernels

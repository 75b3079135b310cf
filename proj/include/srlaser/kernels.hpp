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

#pragma once

// Hot loops of the simulator. Every parallel kernel has a serial twin that is
// kept as the reference for tests and benchmarks; both produce bitwise equal
// results because rows (or frequency points) are reduced independently.

#include "srlaser/operators.hpp"

#include <span>

namespace srl::kernels {

using RowMajorSparse = Eigen::SparseMatrix<cd, Eigen::RowMajor>;

/// y = M x, one row at a time.
void spmv_serial(const RowMajorSparse& m, std::span<const cd> x, std::span<cd> y);

/// y = M x with rows split across OpenMP threads. Falls back to the serial
/// loop below `min_parallel_rows` or inside an enclosing parallel region.
void spmv_parallel(const RowMajorSparse& m, std::span<const cd> x, std::span<cd> y,
                   Index min_parallel_rows = 2048);

/// Threads OpenMP would use for a top-level parallel region.
int max_threads();

}  // namespace srl::kernels

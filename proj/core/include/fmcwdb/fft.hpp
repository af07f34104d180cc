// SPDX-License-Identifier: Apache-2.0
//
// fmcwdb: OOK-FMCW distance-bounding simulator
// Copyright (C) 2026 The fmcwdb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fmcwdb/common.hpp"

namespace fmcwdb {

/// Unnormalised in-place DFT (forward: exp(-j...), inverse: exp(+j...)).
/// Backed by FFTW; plans are cached per size and safe to use from several
/// threads.
void fft_inplace(std::span<Sample> data, bool inverse = false);

std::size_t next_pow2(std::size_t n);

}  // namespace fmcwdb

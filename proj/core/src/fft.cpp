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

#include "fmcwdb/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace fmcwdb {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, bool inverse) {
    std::lock_guard lock(mu_);
    const auto key = std::make_pair(n, inverse);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning scratch; execution always goes through fftw_execute_dft.
    std::vector<Sample> scratch(n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft_inplace(std::span<Sample> data, bool inverse) {
  if (data.empty()) return;
  fftw_plan plan = cache().get(data.size(), inverse);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace fmcwdb

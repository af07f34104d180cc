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

#include <iosfwd>
#include <string>

#include "fmcwdb/waveform.hpp"

namespace fmcwdb::harness {

/// Capture layout: a text line `fs=<Hz> t0=<s> n=<count>` padded with spaces
/// to a multiple of 32 bytes (newline included), then n little-endian
/// float32 I/Q pairs.
void write_capture(std::ostream& out, const WaveformBuffer& w);
void write_capture(const std::string& path, const WaveformBuffer& w);

/// Throws std::runtime_error on a malformed header or short payload.
WaveformBuffer read_capture(std::istream& in);
WaveformBuffer read_capture(const std::string& path);

}  // namespace fmcwdb::harness

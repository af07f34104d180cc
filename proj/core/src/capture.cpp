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

#include "fmcwdb/harness/capture.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace fmcwdb::harness {

namespace {

constexpr std::size_t kHeaderBlock = 32;

void put_f32(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
  const unsigned char b[4] = {static_cast<unsigned char>(bits), static_cast<unsigned char>(bits >> 8),
                              static_cast<unsigned char>(bits >> 16), static_cast<unsigned char>(bits >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

float get_f32(const unsigned char* b) {
  const std::uint32_t bits = static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
                             static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
  return std::bit_cast<float>(bits);
}

}  // namespace

void write_capture(std::ostream& out, const WaveformBuffer& w) {
  char head[128];
  const int len = std::snprintf(head, sizeof head, "fs=%.17g t0=%.17g n=%zu", w.fs, w.t0, w.size());
  std::string line(head, static_cast<std::size_t>(len));
  const std::size_t total = (line.size() + 1 + kHeaderBlock - 1) / kHeaderBlock * kHeaderBlock;
  line.resize(total - 1, ' ');
  line.push_back('\n');
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (const auto& s : w.samples) {
    put_f32(out, s.real());
    put_f32(out, s.imag());
  }
  if (!out) throw std::runtime_error("capture write failed");
}

void write_capture(const std::string& path, const WaveformBuffer& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_capture(out, w);
}

WaveformBuffer read_capture(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("capture: missing header");
  if ((line.size() + 1) % kHeaderBlock != 0) throw std::runtime_error("capture: header not block aligned");
  WaveformBuffer w;
  std::size_t n = 0;
  if (std::sscanf(line.c_str(), "fs=%lf t0=%lf n=%zu", &w.fs, &w.t0, &n) != 3)
    throw std::runtime_error("capture: malformed header '" + line + "'");
  w.samples.resize(n);
  unsigned char b[8];
  for (auto& s : w.samples) {
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("capture: truncated payload");
    s = Sample{get_f32(b), get_f32(b + 4)};
  }
  return w;
}

WaveformBuffer read_capture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read capture '" + path + "'");
  return read_capture(in);
}

}  // namespace fmcwdb::harness

// Copyright 2026 The astar-mle Authors
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

#include "mle/shots_io.h"

#include <charconv>
#include <sstream>

namespace mle {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

BitVec parse_01(std::string_view line, size_t width, size_t line_no, const char* what) {
  if (line.size() != width) {
    throw ShotFormatError(line_no, std::string("expected ") + std::to_string(width) + " " +
                                       what + " characters, got " +
                                       std::to_string(line.size()));
  }
  BitVec bits(width);
  for (size_t i = 0; i < width; ++i) {
    if (line[i] == '1') {
      bits.set(i);
    } else if (line[i] != '0') {
      throw ShotFormatError(line_no, "expected only '0' and '1'");
    }
  }
  return bits;
}

}  // namespace

ShotFormat parse_shot_format(std::string_view name) {
  if (name == "dets") return ShotFormat::kDets;
  if (name == "b01") return ShotFormat::kB01;
  throw std::invalid_argument("unknown shot format '" + std::string(name) + "'");
}

std::vector<Syndrome> parse_shots(std::string_view text, ShotFormat format,
                                  size_t num_detectors) {
  std::vector<Syndrome> shots;
  const auto lines = split_lines(text);
  for (size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    if (format == ShotFormat::kB01) {
      shots.push_back(Syndrome::from_bitvec(parse_01(line, num_detectors, n + 1, "detector")));
      continue;
    }
    std::vector<DetectorId> dets;
    size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos >= line.size()) break;
      size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      const std::string_view tok = line.substr(pos, end - pos);
      uint64_t k = 0;
      const char* first = tok.data() + 1;
      const char* last = tok.data() + tok.size();
      auto [ptr, ec] = std::from_chars(first, last, k);
      if (tok.size() < 2 || tok[0] != 'D' || ec != std::errc() || ptr != last) {
        throw ShotFormatError(n + 1, "malformed detector token '" + std::string(tok) + "'");
      }
      if (k >= num_detectors) {
        throw ShotFormatError(n + 1, "detector " + std::string(tok) + " out of range");
      }
      dets.push_back(static_cast<DetectorId>(k));
      pos = end;
    }
    shots.emplace_back(std::move(dets));
  }
  return shots;
}

std::string format_shots(std::span<const Syndrome> shots, ShotFormat format,
                         size_t num_detectors) {
  std::string out;
  for (const Syndrome& s : shots) {
    if (format == ShotFormat::kB01) {
      out += s.to_bitvec(num_detectors).to_01();
    } else {
      bool first = true;
      for (DetectorId d : s.activated()) {
        if (!first) out += ' ';
        out += 'D' + std::to_string(d);
        first = false;
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<BitVec> parse_observable_lines(std::string_view text,
                                           size_t num_observables) {
  std::vector<BitVec> out;
  const auto lines = split_lines(text);
  for (size_t n = 0; n < lines.size(); ++n) {
    out.push_back(parse_01(lines[n], num_observables, n + 1, "observable"));
  }
  return out;
}

std::string format_prediction(const DecodeOutcome& outcome) {
  if (outcome.low_confidence) return std::string(kLowConfidenceToken);
  return outcome.predicted_observables.to_01();
}

}  // namespace mle

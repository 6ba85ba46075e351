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

#include "mle/dem.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "mle/errors.h"

namespace mle {

namespace {

constexpr uint64_t kMaxTargetIndex = uint64_t{1} << 30;
constexpr uint64_t kMaxDetectors = uint64_t{1} << 24;
constexpr uint64_t kMaxObservables = uint64_t{1} << 16;
constexpr uint64_t kMaxUnrolledSteps = uint64_t{1} << 26;
constexpr size_t kMaxNesting = 200;

enum class Tok { kWord, kLParen, kRParen, kComma, kLBrace, kRBrace, kCaret, kNewline, kEnd };

struct Token {
  Tok kind;
  std::string_view text;
  size_t line;
  size_t column;
};

bool is_special(char c) {
  return c == '(' || c == ')' || c == ',' || c == '{' || c == '}' ||
         c == '^' || c == '#' || c == '\n' || c == ' ' || c == '\t' ||
         c == '\r';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token peek() {
    if (!peeked_) peeked_ = scan();
    return *peeked_;
  }

  Token next() {
    Token t = peek();
    peeked_.reset();
    return t;
  }

 private:
  Token scan() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
    const size_t line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::kEnd, {}, line, col};
    const size_t start = pos_;
    char c = text_[pos_];
    Tok kind;
    switch (c) {
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case ',': kind = Tok::kComma; break;
      case '{': kind = Tok::kLBrace; break;
      case '}': kind = Tok::kRBrace; break;
      case '^': kind = Tok::kCaret; break;
      case '\n': kind = Tok::kNewline; break;
      default: kind = Tok::kWord; break;
    }
    if (kind == Tok::kWord) {
      while (pos_ < text_.size() && !is_special(text_[pos_])) advance();
    } else if (kind == Tok::kNewline) {
      ++pos_;
      ++line_;
      col_ = 1;
    } else {
      advance();
    }
    return {kind, text_.substr(start, pos_ - start), line, col};
  }

  void advance() {
    ++pos_;
    ++col_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  size_t col_ = 1;
  std::optional<Token> peeked_;
};

[[noreturn]] void fail(DemParseError::Kind kind, const Token& at,
                       const std::string& msg) {
  throw DemParseError(kind, at.line, at.column, msg);
}

std::optional<double> to_real(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<uint64_t> to_uint(std::string_view s) {
  uint64_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  DemProgram parse() {
    DemProgram program;
    program.instructions = parse_block(0, nullptr);
    return program;
  }

 private:
  using Kind = DemParseError::Kind;

  std::vector<DemInstruction> parse_block(size_t depth, const Token* open) {
    if (depth > kMaxNesting) fail(Kind::kSyntax, *open, "repeat blocks nested too deeply");
    std::vector<DemInstruction> out;
    while (true) {
      Token t = lex_.next();
      switch (t.kind) {
        case Tok::kNewline:
          continue;
        case Tok::kEnd:
          if (open) fail(Kind::kSyntax, *open, "unterminated '{'");
          return out;
        case Tok::kRBrace:
          if (!open) fail(Kind::kSyntax, t, "unmatched '}'");
          return out;
        case Tok::kWord:
          out.push_back(parse_instruction(t, depth));
          break;
        default:
          fail(Kind::kSyntax, t, "expected an instruction name");
      }
    }
  }

  DemInstruction parse_instruction(const Token& name_tok, size_t depth) {
    const std::string name = lower(name_tok.text);
    DemInstruction inst;
    if (name == "error") {
      inst.kind = DemInstruction::Kind::kError;
    } else if (name == "detector") {
      inst.kind = DemInstruction::Kind::kDetector;
    } else if (name == "logical_observable") {
      inst.kind = DemInstruction::Kind::kLogicalObservable;
    } else if (name == "shift_detectors") {
      inst.kind = DemInstruction::Kind::kShiftDetectors;
    } else if (name == "repeat") {
      inst.kind = DemInstruction::Kind::kRepeat;
    } else {
      fail(Kind::kUnsupportedInstruction, name_tok,
           "unsupported instruction '" + std::string(name_tok.text) + "'");
    }

    bool has_parens = false;
    if (lex_.peek().kind == Tok::kLParen) {
      has_parens = true;
      lex_.next();
      inst.args = parse_args();
    }

    switch (inst.kind) {
      case DemInstruction::Kind::kError: {
        if (!has_parens || inst.args.size() != 1) {
          fail(Kind::kSyntax, name_tok, "error takes exactly one probability argument");
        }
        const double p = inst.args[0];
        if (!(p > 0.0 && p < 1.0)) {
          fail(Kind::kProbabilityOutOfRange, name_tok, "error probability must lie in (0, 1)");
        }
        inst.targets = parse_targets(/*allow_det=*/true, /*allow_obs=*/true,
                                     /*allow_sep=*/true);
        break;
      }
      case DemInstruction::Kind::kDetector:
        inst.targets = parse_targets(true, false, false);
        if (inst.targets.empty()) fail(Kind::kMalformedTarget, name_tok, "detector needs a D target");
        break;
      case DemInstruction::Kind::kLogicalObservable:
        if (!inst.args.empty()) fail(Kind::kSyntax, name_tok, "logical_observable takes no arguments");
        inst.targets = parse_targets(false, true, false);
        if (inst.targets.empty()) fail(Kind::kMalformedTarget, name_tok, "logical_observable needs an L target");
        break;
      case DemInstruction::Kind::kShiftDetectors: {
        Token t = lex_.next();
        auto n = t.kind == Tok::kWord ? to_uint(t.text) : std::nullopt;
        if (!n || *n > kMaxTargetIndex) {
          fail(Kind::kMalformedTarget, t, "shift_detectors needs a non-negative integer offset");
        }
        inst.repeat_count = *n;
        break;
      }
      case DemInstruction::Kind::kRepeat: {
        if (has_parens) fail(Kind::kSyntax, name_tok, "repeat takes no arguments");
        Token t = lex_.next();
        auto n = t.kind == Tok::kWord ? to_uint(t.text) : std::nullopt;
        if (!n) fail(Kind::kSyntax, t, "repeat needs a non-negative integer count");
        inst.repeat_count = *n;
        while (lex_.peek().kind == Tok::kNewline) lex_.next();
        Token open = lex_.next();
        if (open.kind != Tok::kLBrace) fail(Kind::kSyntax, open, "expected '{' after repeat count");
        inst.body = parse_block(depth + 1, &open);
        return inst;
      }
    }
    Token end = lex_.peek();
    if (end.kind != Tok::kNewline && end.kind != Tok::kEnd && end.kind != Tok::kRBrace) {
      fail(Kind::kSyntax, end, "unexpected token '" + std::string(end.text) + "'");
    }
    return inst;
  }

  std::vector<double> parse_args() {
    std::vector<double> args;
    Token t = lex_.next();
    if (t.kind == Tok::kRParen) return args;
    while (true) {
      if (t.kind != Tok::kWord) fail(Kind::kSyntax, t, "expected a number");
      auto v = to_real(t.text);
      if (!v) fail(Kind::kSyntax, t, "'" + std::string(t.text) + "' is not a finite number");
      args.push_back(*v);
      t = lex_.next();
      if (t.kind == Tok::kRParen) return args;
      if (t.kind != Tok::kComma) fail(Kind::kSyntax, t, "expected ',' or ')'");
      t = lex_.next();
    }
  }

  std::vector<DemTarget> parse_targets(bool allow_det, bool allow_obs, bool allow_sep) {
    std::vector<DemTarget> targets;
    std::optional<Token> last_sep;
    while (true) {
      Token t = lex_.peek();
      if (t.kind == Tok::kCaret) {
        lex_.next();
        if (!allow_sep || targets.empty() ||
            targets.back().kind == DemTarget::Kind::kSeparator) {
          fail(Kind::kMalformedTarget, t, "misplaced '^' separator");
        }
        targets.push_back(DemTarget::separator());
        last_sep = t;
        continue;
      }
      if (t.kind != Tok::kWord) break;
      lex_.next();
      const char prefix = t.text[0];
      auto idx = to_uint(t.text.substr(1));
      if ((prefix != 'D' && prefix != 'L') || !idx || *idx >= kMaxTargetIndex) {
        fail(Kind::kMalformedTarget, t, "malformed target '" + std::string(t.text) + "'");
      }
      if (prefix == 'D' && !allow_det) fail(Kind::kMalformedTarget, t, "detector target not allowed here");
      if (prefix == 'L' && !allow_obs) fail(Kind::kMalformedTarget, t, "observable target not allowed here");
      targets.push_back(prefix == 'D' ? DemTarget::detector(*idx)
                                      : DemTarget::observable(*idx));
    }
    if (!targets.empty() && targets.back().kind == DemTarget::Kind::kSeparator) {
      fail(Kind::kMalformedTarget, *last_sep, "trailing '^' separator");
    }
    return targets;
  }

  Lexer lex_;
};

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_instruction(const DemInstruction& inst, size_t indent, std::string& out) {
  out.append(indent * 4, ' ');
  auto write_args = [&] {
    if (inst.args.empty()) return;
    out += '(';
    for (size_t i = 0; i < inst.args.size(); ++i) {
      if (i) out += ", ";
      out += format_real(inst.args[i]);
    }
    out += ')';
  };
  auto write_targets = [&] {
    for (const auto& t : inst.targets) {
      out += ' ';
      switch (t.kind) {
        case DemTarget::Kind::kDetector: out += 'D' + std::to_string(t.value); break;
        case DemTarget::Kind::kObservable: out += 'L' + std::to_string(t.value); break;
        case DemTarget::Kind::kSeparator: out += '^'; break;
      }
    }
  };
  switch (inst.kind) {
    case DemInstruction::Kind::kError:
      out += "error";
      write_args();
      write_targets();
      break;
    case DemInstruction::Kind::kDetector:
      out += "detector";
      write_args();
      write_targets();
      break;
    case DemInstruction::Kind::kLogicalObservable:
      out += "logical_observable";
      write_targets();
      break;
    case DemInstruction::Kind::kShiftDetectors:
      out += "shift_detectors";
      write_args();
      out += ' ' + std::to_string(inst.repeat_count);
      break;
    case DemInstruction::Kind::kRepeat:
      out += "repeat " + std::to_string(inst.repeat_count) + " {\n";
      for (const auto& child : inst.body) write_instruction(child, indent + 1, out);
      out.append(indent * 4, ' ');
      out += '}';
      break;
  }
  out += '\n';
}

struct RawChannel {
  double probability;
  std::vector<DetectorId> detectors;
  std::vector<uint64_t> observables;
};

// Sorts and cancels repeated entries pairwise.
template <typename T>
void xor_reduce(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  std::vector<T> out;
  for (size_t i = 0; i < v.size();) {
    size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(v[i]);
    i = j;
  }
  v = std::move(out);
}

class Instantiator {
 public:
  void run(const std::vector<DemInstruction>& block) {
    for (const auto& inst : block) {
      step();
      switch (inst.kind) {
        case DemInstruction::Kind::kError:
          add_error(inst);
          break;
        case DemInstruction::Kind::kDetector:
          for (const auto& t : inst.targets) {
            const uint64_t d = detector_index(t.value);
            std::vector<double> c = inst.args;
            for (size_t i = 0; i < c.size() && i < coord_shift_.size(); ++i) {
              c[i] += coord_shift_[i];
            }
            coords_[d] = std::move(c);
          }
          break;
        case DemInstruction::Kind::kLogicalObservable:
          for (const auto& t : inst.targets) note_observable(t.value);
          break;
        case DemInstruction::Kind::kShiftDetectors:
          det_offset_ += inst.repeat_count;
          if (det_offset_ > kMaxDetectors) throw TooLarge("detector offset exceeds limit");
          if (coord_shift_.size() < inst.args.size()) coord_shift_.resize(inst.args.size(), 0.0);
          for (size_t i = 0; i < inst.args.size(); ++i) coord_shift_[i] += inst.args[i];
          break;
        case DemInstruction::Kind::kRepeat:
          for (uint64_t r = 0; r < inst.repeat_count; ++r) {
            step();
            run(inst.body);
          }
          break;
      }
    }
  }

  ErrorModel finish() {
    const size_t num_obs = static_cast<size_t>(num_observables_);
    std::vector<ErrorChannel> channels;
    channels.reserve(raw_.size());
    for (auto& raw : raw_) {
      ErrorChannel ch;
      ch.probability = raw.probability;
      ch.weight = weight_of(raw.probability);
      ch.detectors = std::move(raw.detectors);
      ch.observables = BitVec(num_obs);
      for (uint64_t o : raw.observables) ch.observables.set(o);
      channels.push_back(std::move(ch));
    }
    const size_t k = static_cast<size_t>(num_detectors_);
    std::vector<std::vector<double>> coords;
    if (!coords_.empty()) {
      coords.resize(k);
      for (auto& [d, c] : coords_) coords[d] = std::move(c);
      bool any = std::any_of(coords.begin(), coords.end(),
                             [](const auto& c) { return !c.empty(); });
      if (!any) coords.clear();
    }
    return ErrorModel(std::move(channels), k, num_obs, std::move(coords));
  }

 private:
  void step() {
    if (++steps_ > kMaxUnrolledSteps) throw TooLarge("unrolled program exceeds size limit");
  }

  uint64_t detector_index(uint64_t k) {
    const uint64_t d = k + det_offset_;
    if (d >= kMaxDetectors) throw TooLarge("detector index exceeds limit");
    num_detectors_ = std::max(num_detectors_, d + 1);
    return d;
  }

  void note_observable(uint64_t k) {
    if (k >= kMaxObservables) throw TooLarge("observable index exceeds limit");
    num_observables_ = std::max(num_observables_, k + 1);
  }

  void add_error(const DemInstruction& inst) {
    RawChannel cur{inst.args[0], {}, {}};
    auto flush = [&] {
      xor_reduce(cur.detectors);
      xor_reduce(cur.observables);
      raw_.push_back(std::move(cur));
      cur = RawChannel{inst.args[0], {}, {}};
    };
    for (const auto& t : inst.targets) {
      switch (t.kind) {
        case DemTarget::Kind::kDetector:
          cur.detectors.push_back(static_cast<DetectorId>(detector_index(t.value)));
          break;
        case DemTarget::Kind::kObservable:
          note_observable(t.value);
          cur.observables.push_back(t.value);
          break;
        case DemTarget::Kind::kSeparator:
          flush();
          break;
      }
    }
    flush();
  }

  uint64_t det_offset_ = 0;
  std::vector<double> coord_shift_;
  uint64_t num_detectors_ = 0;
  uint64_t num_observables_ = 0;
  uint64_t steps_ = 0;
  std::vector<RawChannel> raw_;
  std::map<uint64_t, std::vector<double>> coords_;
};

}  // namespace

DemParseError::DemParseError(Kind kind, size_t line, size_t column,
                             const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      kind_(kind),
      line_(line),
      column_(column) {}

DemProgram parse_dem(std::string_view text) { return Parser(text).parse(); }

std::string serialize_dem(const DemProgram& program) {
  std::string out;
  for (const auto& inst : program.instructions) write_instruction(inst, 0, out);
  return out;
}

ErrorModel instantiate(const DemProgram& program) {
  Instantiator inst;
  inst.run(program.instructions);
  return inst.finish();
}

DemProgram to_program(const ErrorModel& model) {
  DemProgram program;
  uint64_t max_used = 0;
  bool any_used = false;
  for (const auto& ch : model.channels()) {
    if (!ch.detectors.empty()) {
      max_used = std::max<uint64_t>(max_used, ch.detectors.back());
      any_used = true;
    }
  }
  const auto& coords = model.detector_coords();
  for (size_t d = 0; d < coords.size(); ++d) {
    if (coords[d].empty()) continue;
    DemInstruction det;
    det.kind = DemInstruction::Kind::kDetector;
    det.args = coords[d];
    det.targets = {DemTarget::detector(d)};
    program.instructions.push_back(std::move(det));
  }
  const size_t k = model.num_detectors();
  const bool last_declared = !coords.empty() && !coords[k - 1].empty();
  if (k > 0 && !last_declared && (!any_used || max_used + 1 < k)) {
    DemInstruction det;
    det.kind = DemInstruction::Kind::kDetector;
    det.targets = {DemTarget::detector(k - 1)};
    program.instructions.push_back(std::move(det));
  }
  if (model.num_observables() > 0) {
    const size_t last = model.num_observables() - 1;
    const bool used = std::any_of(model.channels().begin(), model.channels().end(),
                                  [&](const ErrorChannel& ch) { return ch.observables.get(last); });
    if (!used) {
      DemInstruction obs;
      obs.kind = DemInstruction::Kind::kLogicalObservable;
      obs.targets = {DemTarget::observable(last)};
      program.instructions.push_back(std::move(obs));
    }
  }
  for (const auto& ch : model.channels()) {
    DemInstruction err;
    err.kind = DemInstruction::Kind::kError;
    err.args = {ch.probability};
    for (DetectorId d : ch.detectors) err.targets.push_back(DemTarget::detector(d));
    ch.observables.for_each_set(
        [&](size_t o) { err.targets.push_back(DemTarget::observable(o)); });
    program.instructions.push_back(std::move(err));
  }
  return program;
}

}  // namespace mle

// Copyright 2026 The Treecoder Authors.
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

// Internal event codes. A non-negative code is four hex digits, one per
// semantic position:
//
//   digit 3  communicative act   1 Say, 2 Appeal, 3 Intend, 4 Demand,
//                                5 Protest, 6 Threaten, 7 Disapprove,
//                                8 Posture, 9 Coerce, A Investigate, B Consult
//   digit 2  yield class         1 Reduce, 2 Yield
//   digit 1  action class        1 Meet, 2 Settle, 3 Mediate, 4 Aid,
//                                5 Expel, 6 Pol. change, 7 Mat. coop,
//                                8 Dip. coop, 9 Assault, A Fight,
//                                B Mass violence
//   digit 0  specifier           1 Leadership ... F De-escalation
//
// Verb codes compose by adding digit-disjoint values (Intend 0x3000 + Aid
// 0x0040 = intend to aid 0x3040). Refusals are the cooperative code minus
// 0xFFFF, which is always negative.

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace treecoder {

inline constexpr int32_t kRefusalOffset = 0xFFFF;

class InternalCode {
 public:
  constexpr InternalCode() = default;
  constexpr explicit InternalCode(int32_t value) : value_(value) {}

  constexpr int32_t value() const { return value_; }
  constexpr bool negative() const { return value_ < 0; }

  // Non-negative codes fit four hex digits; negative ones are refusals of
  // some code in [0, 0xFFFE].
  constexpr bool valid() const {
    return value_ > -0x10000 && value_ < 0x10000;
  }

  // The cooperative code a refusal was derived from; identity otherwise.
  constexpr InternalCode Complement() const {
    return negative() ? InternalCode(value_ + kRefusalOffset) : *this;
  }

  constexpr int digit(int position) const {
    return (value_ >> (4 * position)) & 0xF;
  }

  std::string ToString() const {
    static constexpr char kHex[] = "0123456789ABCDEF";
    int32_t magnitude = value_ < 0 ? -value_ : value_;
    std::string out = value_ < 0 ? "-0x" : "0x";
    for (int shift = 12; shift >= 0; shift -= 4) {
      out += kHex[(magnitude >> shift) & 0xF];
    }
    return out;
  }

  friend constexpr auto operator<=>(InternalCode, InternalCode) = default;

 private:
  int32_t value_ = 0;
};

enum class CodeErrorKind {
  kUnknownCameo,
  kUnmappable,
  kCollision,
  kAlreadyNegated,
  kInvalidCode,
  kBadMapping,
};

class CodeError : public std::runtime_error {
 public:
  CodeError(CodeErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  CodeErrorKind kind() const { return kind_; }

 private:
  CodeErrorKind kind_;
};

// One bit per non-zero hex digit.
constexpr unsigned NonzeroDigitMask(int32_t value) {
  unsigned mask = 0;
  for (int position = 0; position < 4; ++position) {
    if ((value >> (4 * position)) & 0xF) mask |= 1u << position;
  }
  return mask;
}

inline void RequireValid(InternalCode code) {
  if (!code.valid()) {
    throw CodeError(CodeErrorKind::kInvalidCode,
                    "code " + code.ToString() + " is out of range");
  }
}

// Digit-wise composition. Refusals are combined on their complements and
// re-embedded; two refusals cancel.
inline InternalCode Combine(InternalCode a, InternalCode b) {
  RequireValid(a);
  RequireValid(b);
  int32_t lhs = a.Complement().value();
  int32_t rhs = b.Complement().value();
  if (NonzeroDigitMask(lhs) & NonzeroDigitMask(rhs)) {
    throw CodeError(CodeErrorKind::kCollision,
                    "codes " + a.ToString() + " and " + b.ToString() +
                        " occupy the same digit");
  }
  int32_t sum = lhs + rhs;
  if (a.negative() != b.negative()) sum -= kRefusalOffset;
  return InternalCode(sum);
}

inline InternalCode Negate(InternalCode code) {
  if (code.negative()) {
    throw CodeError(CodeErrorKind::kAlreadyNegated,
                    "code " + code.ToString() + " is already a refusal");
  }
  if (code.value() >= kRefusalOffset) {
    throw CodeError(CodeErrorKind::kInvalidCode,
                    "code " + code.ToString() + " cannot be refused");
  }
  return InternalCode(code.value() - kRefusalOffset);
}

// Flips the polarity of a code: refuses a cooperative code, un-refuses a
// refusal. Equivalent to Combine(Negate(0), code).
inline InternalCode ToggleNegation(InternalCode code) {
  return Combine(Negate(InternalCode(0)), code);
}

// Bijective CAMEO <-> internal table loaded from a `CAMEO<TAB>HEX4` file.
class CodeMap {
 public:
  // Refusal subcodes and the cooperative CAMEO code each one refuses. A row
  // is live only when its complement is present in the loaded table.
  static constexpr std::pair<std::string_view, std::string_view>
      kRefusalRows[] = {
          {"121", "060"},  // material cooperation
          {"122", "070"},  // aid
          {"123", "083"},  // political reform
          {"124", "080"},  // yield
          {"125", "040"},  // consult, meet
          {"126", "045"},  // mediation
          {"127", "057"},  // settlement
  };
  static constexpr std::string_view kRefusalTopLevel = "120";

  static CodeMap FromString(std::string_view text,
                            const std::string &name = "<mapping>") {
    CodeMap map;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream fields(line);
      std::string cameo, hex, extra;
      if (!(fields >> cameo)) continue;
      auto where = [&] { return name + ":" + std::to_string(line_number); };
      if (!(fields >> hex) || (fields >> extra)) {
        throw CodeError(CodeErrorKind::kBadMapping,
                        where() + ": expected CAMEO<TAB>HEX4");
      }
      auto value = ParseHex4(hex);
      if (!value) {
        throw CodeError(CodeErrorKind::kBadMapping,
                        where() + ": '" + hex + "' is not four hex digits");
      }
      map.Add(cameo, InternalCode(*value), where());
    }
    map.BuildRefusals();
    return map;
  }

  static CodeMap FromFile(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
      throw CodeError(CodeErrorKind::kBadMapping,
                      "cannot open code mapping '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return FromString(buffer.str(), path);
  }

  // (cameo, internal) rows in file order.
  const std::vector<std::pair<std::string, InternalCode>> &entries() const {
    return entries_;
  }

  bool Contains(std::string_view cameo) const {
    return by_cameo_.count(std::string(cameo)) > 0;
  }

  InternalCode ToInternal(std::string_view cameo) const {
    auto it = by_cameo_.find(std::string(cameo));
    if (it != by_cameo_.end()) return it->second;
    if (cameo == kRefusalTopLevel) return Negate(InternalCode(0));
    for (const auto &[refusal, complement] : refusals_) {
      if (refusal == cameo) return Negate(complement);
    }
    throw CodeError(CodeErrorKind::kUnknownCameo,
                    "unknown CAMEO code '" + std::string(cameo) + "'");
  }

  // Exact hit first; otherwise the nearest mapped ancestor (d0 zeroed, then
  // d1). Refusals resolve through their complement to a 12x code.
  std::string ToCameo(InternalCode code) const {
    RequireValid(code);
    if (code.negative()) {
      for (InternalCode candidate : Ancestors(code.Complement())) {
        for (const auto &[refusal, complement] : refusals_) {
          if (complement == candidate) return refusal;
        }
      }
      return std::string(kRefusalTopLevel);
    }
    for (InternalCode candidate : Ancestors(code)) {
      auto it = by_internal_.find(candidate.value());
      if (it != by_internal_.end()) return it->second;
    }
    throw CodeError(CodeErrorKind::kUnmappable,
                    "no CAMEO code for " + code.ToString());
  }

 private:
  static std::optional<int32_t> ParseHex4(std::string_view text) {
    if (text.size() != 4) return std::nullopt;
    int32_t value = 0;
    for (char c : text) {
      int digit;
      if (c >= '0' && c <= '9') {
        digit = c - '0';
      } else if (c >= 'A' && c <= 'F') {
        digit = c - 'A' + 10;
      } else if (c >= 'a' && c <= 'f') {
        digit = c - 'a' + 10;
      } else {
        return std::nullopt;
      }
      value = value * 16 + digit;
    }
    return value;
  }

  static std::vector<InternalCode> Ancestors(InternalCode code) {
    int32_t v = code.value();
    std::vector<InternalCode> chain = {code};
    if (v & 0xF) chain.emplace_back(v & ~0xF);
    if (v & 0xFF) chain.emplace_back(v & ~0xFF);
    return chain;
  }

  void Add(const std::string &cameo, InternalCode code,
           const std::string &where) {
    if (by_cameo_.count(cameo)) {
      throw CodeError(CodeErrorKind::kBadMapping,
                      where + ": CAMEO code " + cameo + " repeated");
    }
    if (by_internal_.count(code.value())) {
      throw CodeError(CodeErrorKind::kBadMapping,
                      where + ": internal code " + code.ToString() +
                          " already maps to " + by_internal_[code.value()]);
    }
    by_cameo_.emplace(cameo, code);
    by_internal_.emplace(code.value(), cameo);
    entries_.emplace_back(cameo, code);
  }

  void BuildRefusals() {
    if (by_cameo_.count(std::string(kRefusalTopLevel))) {
      throw CodeError(CodeErrorKind::kBadMapping,
                      "refusal code 120 must not appear in the mapping file");
    }
    for (const auto &[refusal, complement] : kRefusalRows) {
      auto it = by_cameo_.find(std::string(complement));
      if (it == by_cameo_.end()) continue;
      if (by_cameo_.count(std::string(refusal))) {
        throw CodeError(CodeErrorKind::kBadMapping,
                        "refusal code " + std::string(refusal) +
                            " must not appear in the mapping file");
      }
      refusals_.emplace_back(std::string(refusal), it->second);
    }
  }

  std::unordered_map<std::string, InternalCode> by_cameo_;
  std::map<int32_t, std::string> by_internal_;
  std::vector<std::pair<std::string, InternalCode>> entries_;
  std::vector<std::pair<std::string, InternalCode>> refusals_;
};

}  // namespace treecoder

// Copyright 2026 The gamma-persist authors
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

#include "gp/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace gp {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(const std::string& s) {
  throw std::invalid_argument("malformed rational: \"" + s + "\"");
}

}  // namespace

Rat rat_from_string(const std::string& input) {
  std::string s;
  for (char c : input)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) bad(input);

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(s.begin());
  }
  if (s.empty()) bad(input);

  Rat result;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(input);
    mpz_class p(num, 10), q(den, 10);
    if (q == 0) throw std::invalid_argument("zero denominator: \"" + input + "\"");
    result = Rat(p) / Rat(q);
  } else if (dot != std::string::npos) {
    std::string intpart = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (intpart.empty() && frac.empty()) bad(input);
    if (!intpart.empty() && !all_digits(intpart)) bad(input);
    if (!frac.empty() && !all_digits(frac)) bad(input);
    mpz_class p = intpart.empty() ? mpz_class(0) : mpz_class(intpart, 10);
    mpz_class scale = 1;
    mpz_class fracval = 0;
    if (!frac.empty()) {
      fracval = mpz_class(frac, 10);
      for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    }
    result = Rat(p) + Rat(fracval) / Rat(scale);
  } else {
    if (!all_digits(s)) bad(input);
    result = Rat(mpz_class(s, 10));
  }
  if (neg) result = -result;
  result.canonicalize();
  return result;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

std::string rat_to_decimal(const Rat& r, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class scaled = r.get_num() * scale / r.get_den();  // truncates toward zero
  bool neg = scaled < 0;
  mpz_class abs_scaled = neg ? mpz_class(-scaled) : scaled;
  std::string ds = abs_scaled.get_str();
  if (static_cast<int>(ds.size()) <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
  std::string out = neg ? "-" : "";
  if (digits == 0) return out + ds;
  out += ds.substr(0, ds.size() - digits);
  out += ".";
  out += ds.substr(ds.size() - digits);
  return out;
}

}  // namespace gp

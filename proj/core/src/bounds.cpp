#include "titshom/bounds.hpp"

#include <algorithm>
#include <cctype>

#include "titshom/errors.hpp"

namespace titshom {

namespace {

long floor_div(long a, long d) {
  long q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
  return q;
}

std::string family_name(RootFamily f) {
  switch (f) {
    case RootFamily::A: return "A";
    case RootFamily::B: return "B";
    case RootFamily::C: return "C";
    case RootFamily::BC: return "BC";
    case RootFamily::D: return "D";
    case RootFamily::G: return "G";
    case RootFamily::F: return "F";
    case RootFamily::E: return "E";
  }
  return "?";
}

RootFactor parse_factor(const std::string& tok) {
  size_t i = 0;
  while (i < tok.size() && std::isalpha(static_cast<unsigned char>(tok[i]))) ++i;
  std::string fam = tok.substr(0, i);
  std::transform(fam.begin(), fam.end(), fam.begin(), [](unsigned char c) { return std::toupper(c); });
  const std::string num = tok.substr(i);
  if (fam.empty() || num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      num.size() > 4)
    throw InvalidDescriptor("cannot read factor '" + tok + "'");
  RootFactor f;
  f.rank = std::stoi(num);
  if (fam == "A") f.family = RootFamily::A;
  else if (fam == "B") f.family = RootFamily::B;
  else if (fam == "C") f.family = RootFamily::C;
  else if (fam == "BC") f.family = RootFamily::BC;
  else if (fam == "D") f.family = RootFamily::D;
  else if (fam == "G") f.family = RootFamily::G;
  else if (fam == "F") f.family = RootFamily::F;
  else if (fam == "E") f.family = RootFamily::E;
  else throw InvalidDescriptor("unknown family '" + fam + "'");
  if (f.family == RootFamily::D && f.rank == 3) f.family = RootFamily::A;
  return f;
}

}  // namespace

std::string to_string(const RootFactor& f) { return family_name(f.family) + std::to_string(f.rank); }

RootSystemDescriptor RootSystemDescriptor::parse(const std::string& text) {
  std::string s;
  for (size_t i = 0; i < text.size(); ++i) {
    // "×" is two bytes in UTF-8.
    if (text.compare(i, 2, "\xC3\x97") == 0) {
      s += 'x';
      ++i;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(text[i]))) s += text[i];
  }
  RootSystemDescriptor d;
  if (s.empty() || s == "empty" || s == "0") return d;
  size_t start = 0;
  while (start <= s.size()) {
    size_t end = start;
    // Factor separators: 'x', '*' (family letters never include x).
    while (end < s.size() && s[end] != 'x' && s[end] != 'X' && s[end] != '*') ++end;
    d.factors.push_back(parse_factor(s.substr(start, end - start)));
    if (end == s.size()) break;
    start = end + 1;
  }
  d.validate();
  return d;
}

void RootSystemDescriptor::validate() const {
  for (const auto& f : factors) {
    bool ok = false;
    switch (f.family) {
      case RootFamily::A: ok = f.rank >= 1; break;
      case RootFamily::B:
      case RootFamily::C:
      case RootFamily::BC: ok = f.rank >= 2; break;
      case RootFamily::D: ok = f.rank >= 4 || f.rank == 3; break;
      case RootFamily::G: ok = f.rank == 2; break;
      case RootFamily::F: ok = f.rank == 4; break;
      case RootFamily::E: ok = f.rank >= 6 && f.rank <= 8; break;
    }
    if (!ok) throw InvalidDescriptor("no irreducible root system " + titshom::to_string(f));
  }
}

std::string RootSystemDescriptor::to_string() const {
  if (factors.empty()) return "empty";
  std::string s;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "x";
    s += titshom::to_string(factors[i]);
  }
  return s;
}

int irreducible_bound(const RootFactor& f) {
  const long n = f.rank;
  switch (f.family) {
    case RootFamily::A: return static_cast<int>(floor_div(n - 1, 2));
    case RootFamily::B:
    case RootFamily::C:
    case RootFamily::BC: return static_cast<int>(floor_div(n - 2, 2));
    case RootFamily::D: return n == 3 ? 1 : static_cast<int>(floor_div(n - 3, 2));
    default: return 0;
  }
}

int vanishing_bound(const RootSystemDescriptor& d, BoundMode mode) {
  d.validate();
  const int m = static_cast<int>(d.factors.size());
  int total = m - 1;
  for (const auto& f : d.factors) {
    const bool type_a = f.family == RootFamily::A || (f.family == RootFamily::D && f.rank == 3);
    if (mode == BoundMode::Integral) {
      if (!type_a) throw IntegralModeNonTypeA(d.to_string());
      total += static_cast<int>(floor_div(f.rank - 1, 3));
    } else {
      total += irreducible_bound(f);
    }
  }
  return total;
}

bool floor_inequality_holds(long a, long b, long d) {
  if (d < 2) throw InvalidArgument("floor inequality needs d >= 2");
  return 1 + floor_div(a, d) + floor_div(b, d) >= floor_div(a + b + 1, d);
}

FloorSweep floor_inequality_sweep(long lo, long hi, long dmin, long dmax) {
  FloorSweep s;
  for (long d = dmin; d <= dmax; ++d)
    for (long a = lo; a <= hi; ++a)
      for (long b = lo; b <= hi; ++b) {
        ++s.checked;
        if (!floor_inequality_holds(a, b, d)) ++s.failures;
      }
  return s;
}

}  // namespace titshom

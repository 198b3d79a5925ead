#include "curtainlab/walker/isometry.hpp"

#include <cmath>
#include <cstdint>

namespace curtainlab::walker {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::identity: return "identity";
    case Kind::elliptic: return "elliptic";
    case Kind::parabolic: return "parabolic";
    case Kind::axial: return "axial";
  }
  return "?";
}

std::string to_string(Contracting c) {
  switch (c) {
    case Contracting::yes: return "yes";
    case Contracting::no: return "no";
    case Contracting::unknown: return "unknown";
  }
  return "?";
}

std::string digest_text(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

double acosh_exp(double log_x) {
  if (log_x <= 0.0) return 0.0;
  if (log_x < 1.0) return std::acosh(std::exp(log_x));
  return log_x + std::log1p(std::sqrt(-std::expm1(-2.0 * log_x)));
}

}  // namespace curtainlab::walker

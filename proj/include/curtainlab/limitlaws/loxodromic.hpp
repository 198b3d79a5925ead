#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "curtainlab/curtains/separation.hpp"
#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::limitlaws {

struct LoxodromicProbe {
  int L = 0;
  /// d_L_lower(o, g^k o) for k = power, 2 power, 3 power.
  std::vector<int> distances;
  bool loxodromic = false;
};

inline constexpr int kMaxSearchL = 10;

/// Greedy L-chains along [o, g^k o] growing linearly in k: the lower bound
/// must increase at each of k = p, 2p, 3p.
template <class S>
LoxodromicProbe probe_loxodromic(const S& s, const walker::Element<S>& g,
                                 const typename S::Point& o, int L,
                                 const curtains::Budget& budget, std::size_t power = 4) {
  LoxodromicProbe out;
  out.L = L;
  walker::Element<S> step = walker::identity(s);
  for (std::size_t i = 0; i < power; ++i) walker::accumulate(s, step, g);
  walker::Element<S> gk = walker::identity(s);
  for (int m = 1; m <= 3; ++m) {
    walker::accumulate(s, gk, step);
    out.distances.push_back(curtains::d_L_lower(s, o, walker::act(s, gk, o), L, budget));
  }
  out.loxodromic = out.distances[0] >= 2 && out.distances[1] > out.distances[0] &&
                   out.distances[2] > out.distances[1];
  return out;
}

/// Smallest L in 1..max_L for which g acts loxodromically on the curtain
/// model, if any.
template <class S>
std::optional<int> find_loxodromic_L(const S& s, const walker::Element<S>& g,
                                     const typename S::Point& o, const curtains::Budget& budget,
                                     int max_L = kMaxSearchL) {
  for (int L = 1; L <= max_L; ++L)
    if (probe_loxodromic(s, g, o, L, budget).loxodromic) return L;
  return std::nullopt;
}

}  // namespace curtainlab::limitlaws

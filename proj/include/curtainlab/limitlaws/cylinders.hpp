#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "curtainlab/geometry/tree.hpp"
#include "curtainlab/limitlaws/boundary.hpp"

namespace curtainlab::limitlaws {

using geometry::TreeRay;
using geometry::TreeSpace;
using geometry::Word;

/// Weighted frequencies of the depth-`depth` cylinders [w] (reduced words of
/// that length) containing the samples.
std::map<Word, double> cylinder_frequencies(const TreeSpace& s, const std::vector<TreeRay>& points,
                                            const std::vector<double>& weights,
                                            std::size_t depth = 2);

inline double cylinder_frequency(const TreeSpace& s, const BoundarySampleSet<TreeSpace>& nu,
                                 const Word& cylinder) {
  const auto f = cylinder_frequencies(s, nu.points, nu.weights, cylinder.size());
  const auto it = f.find(cylinder);
  return it == f.end() ? 0.0 : it->second;
}

double total_variation(const std::map<Word, double>& p, const std::map<Word, double>& q);

struct StationarityReport {
  std::size_t depth = 2;
  std::map<Word, double> empirical;
  std::map<Word, double> pushed;
  double discrepancy = 0.0;
};

/// Total variation on depth-2 cylinders between nu and sum_g mu(g) g nu.
StationarityReport stationarity_check(const TreeSpace& s, const std::vector<TreeRay>& points,
                                      const std::vector<double>& weights,
                                      const std::vector<Word>& generators,
                                      const std::vector<double>& mu, std::size_t depth = 2);

inline StationarityReport stationarity_check(const TreeSpace& s,
                                             const BoundarySampleSet<TreeSpace>& nu,
                                             const std::vector<Word>& generators,
                                             const std::vector<double>& mu) {
  return stationarity_check(s, nu.points, nu.weights, generators, mu);
}

}  // namespace curtainlab::limitlaws

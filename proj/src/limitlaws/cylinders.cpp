#include "curtainlab/limitlaws/cylinders.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::limitlaws {

std::map<Word, double> cylinder_frequencies(const TreeSpace& s, const std::vector<TreeRay>& points,
                                            const std::vector<double>& weights,
                                            std::size_t depth) {
  if (points.size() != weights.size())
    throw std::invalid_argument("cylinder_frequencies: points and weights differ in length");
  std::map<Word, double> out;
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const TreeRay& r = points[i].depth() < depth ? s.deepened(points[i], depth) : points[i];
    if (r.depth() < depth)
      throw std::domain_error("cylinder_frequencies: sample shallower than the cylinder depth");
    out[Word(r.prefix.begin(), r.prefix.begin() + static_cast<std::ptrdiff_t>(depth))] +=
        weights[i];
    total += weights[i];
  }
  for (auto& [w, f] : out) f /= total;
  return out;
}

double total_variation(const std::map<Word, double>& p, const std::map<Word, double>& q) {
  std::set<Word> keys;
  for (const auto& [w, f] : p) keys.insert(w);
  for (const auto& [w, f] : q) keys.insert(w);
  double sum = 0.0;
  for (const auto& w : keys) {
    const auto a = p.find(w), b = q.find(w);
    sum += std::abs((a == p.end() ? 0.0 : a->second) - (b == q.end() ? 0.0 : b->second));
  }
  return 0.5 * sum;
}

StationarityReport stationarity_check(const TreeSpace& s, const std::vector<TreeRay>& points,
                                      const std::vector<double>& weights,
                                      const std::vector<Word>& generators,
                                      const std::vector<double>& mu, std::size_t depth) {
  if (generators.size() != mu.size())
    throw std::invalid_argument("stationarity_check: generators and weights differ in length");
  StationarityReport out;
  out.depth = depth;
  out.empirical = cylinder_frequencies(s, points, weights, depth);
  std::vector<TreeRay> moved;
  std::vector<double> mixture;
  moved.reserve(points.size() * generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j)
    for (std::size_t i = 0; i < points.size(); ++i) {
      moved.push_back(walker::act_boundary(s, generators[j], points[i]));
      mixture.push_back(mu[j] * weights[i]);
    }
  out.pushed = cylinder_frequencies(s, moved, mixture, depth);
  out.discrepancy = total_variation(out.empirical, out.pushed);
  return out;
}

}  // namespace curtainlab::limitlaws

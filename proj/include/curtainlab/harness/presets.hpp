#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "curtainlab/walker/walk.hpp"

namespace curtainlab::harness {

using AnyWalk = std::variant<walker::WalkConfig<geometry::TreeSpace>,
                             walker::WalkConfig<geometry::HyperbolicPlane>,
                             walker::WalkConfig<geometry::EuclideanPlane>,
                             walker::WalkConfig<geometry::TreeTimesLine>>;

struct PresetInfo {
  std::string name;
  std::string space;
  std::string description;
  /// Expected to have positive drift and a contracting element.
  bool non_elementary = false;
  /// Positive drift with trajectories converging to the boundary.
  bool converges = false;
  /// Limit of the contracting fraction as n grows.
  double contracting_limit = 0.0;
};

const std::vector<PresetInfo>& list_presets();
const PresetInfo& preset_info(const std::string& name);

/// Splits a comma-separated preset list; "all" expands to every preset.
std::vector<std::string> expand_presets(const std::string& list);

/// The preset's measure with the given run parameters; unknown names throw
/// std::invalid_argument.
AnyWalk make_preset(const std::string& name, std::size_t n, std::size_t trials, std::uint64_t seed,
                    unsigned threads = 1);

/// The two hyperbolic generators of the Schottky preset.
walker::Mobius schottky_a();
walker::Mobius schottky_b();

}  // namespace curtainlab::harness

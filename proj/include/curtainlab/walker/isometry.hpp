#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "curtainlab/geometry/geometry.hpp"
#include "curtainlab/rng.hpp"

namespace curtainlab::walker {

using geometry::EuclideanPlane;
using geometry::HyperbolicPlane;
using geometry::TreeSpace;
using geometry::TreeTimesLine;
using geometry::Letter;
using geometry::Word;

/// Element of SL(2,R) stored as e^scale * [[a,b],[c,d]] so that long products
/// neither overflow nor underflow. Acts projectively; sign is irrelevant.
struct Mobius {
  double a = 1, b = 0, c = 0, d = 1;
  double scale = 0.0;
  int since_renorm = 0;

  static Mobius from(double a, double b, double c, double d);
  geometry::Mat2 mat() const { return {a, b, c, d}; }
};

/// x -> R(angle) x + (tx, ty).
struct RigidMotion {
  double angle = 0.0;
  double tx = 0.0, ty = 0.0;
};

/// (w, shift) acting on T x R by (p, r) -> (w p, r + shift).
struct TreeLineMotion {
  Word w;
  double shift = 0.0;
};

template <class S>
struct ElementOf;
template <>
struct ElementOf<TreeSpace> {
  using type = Word;
};
template <>
struct ElementOf<HyperbolicPlane> {
  using type = Mobius;
};
template <>
struct ElementOf<EuclideanPlane> {
  using type = RigidMotion;
};
template <>
struct ElementOf<TreeTimesLine> {
  using type = TreeLineMotion;
};
template <class S>
using Element = typename ElementOf<S>::type;

enum class Kind { identity, elliptic, parabolic, axial };
enum class Contracting { yes, no, unknown };

struct Classification {
  Kind kind = Kind::identity;
  double translation_length = 0.0;
  Contracting contracting = Contracting::no;
  /// Largest projection diameter of sampled balls onto an axis (NaN when no
  /// probe was run). Evidence only; never the verdict.
  double probe_diameter = std::nan("");
  int probe_balls = 0;
};

std::string to_string(Kind k);
std::string to_string(Contracting c);

// ---- Tree: reduced words over the tree alphabet. ----
Word identity(const TreeSpace& s);
Word compose(const TreeSpace& s, const Word& g, const Word& h);
void accumulate(const TreeSpace& s, Word& g, const Word& h);
Word inverse(const TreeSpace& s, const Word& g);
geometry::TreePoint act(const TreeSpace& s, const Word& g, const geometry::TreePoint& x);
geometry::TreeRay act_boundary(const TreeSpace& s, const Word& g, const geometry::TreeRay& xi);
double displacement(const TreeSpace& s, const Word& g, const geometry::TreePoint& o);
double orbit_busemann(const TreeSpace& s, const geometry::TreeRay& xi,
                      const geometry::TreePoint& o, const Word& g);
double cocycle(const TreeSpace& s, const Word& g, const geometry::TreeRay& xi,
               const geometry::TreePoint& o);
geometry::TreeRay orbit_ray(const TreeSpace& s, const Word& g, const geometry::TreePoint& o);
Classification classify(const TreeSpace& s, const Word& g);
/// Cyclically reduced core c and conjugator u with g = u c u^-1.
void cyclic_reduction(const TreeSpace& s, const Word& g, Word& u, Word& core);
std::optional<geometry::TreeSegment> axis_segment(const TreeSpace& s, const Word& g,
                                                  const geometry::TreePoint& o,
                                                  double half_length);
std::string format(const TreeSpace& s, const Word& g);
bool same(const TreeSpace& s, const Word& g, const Word& h);

// ---- Hyperbolic plane: Moebius transformations. ----
Mobius identity(const HyperbolicPlane& s);
Mobius compose(const HyperbolicPlane& s, const Mobius& g, const Mobius& h);
void accumulate(const HyperbolicPlane& s, Mobius& g, const Mobius& h);
Mobius inverse(const HyperbolicPlane& s, const Mobius& g);
geometry::HypPoint act(const HyperbolicPlane& s, const Mobius& g, const geometry::HypPoint& x);
geometry::HypIdeal act_boundary(const HyperbolicPlane& s, const Mobius& g,
                                const geometry::HypIdeal& xi);
double displacement(const HyperbolicPlane& s, const Mobius& g, const geometry::HypPoint& o);
double orbit_busemann(const HyperbolicPlane& s, const geometry::HypIdeal& xi,
                      const geometry::HypPoint& o, const Mobius& g);
double cocycle(const HyperbolicPlane& s, const Mobius& g, const geometry::HypIdeal& xi,
               const geometry::HypPoint& o);
geometry::HypIdeal orbit_ray(const HyperbolicPlane& s, const Mobius& g,
                             const geometry::HypPoint& o);
Classification classify(const HyperbolicPlane& s, const Mobius& g);
/// log|trace| of the det-1 representative.
double log_abs_trace(const Mobius& g);
std::optional<geometry::HypSegment> axis_segment(const HyperbolicPlane& s, const Mobius& g,
                                                 const geometry::HypPoint& o,
                                                 double half_length);
std::string format(const HyperbolicPlane& s, const Mobius& g);
bool same(const HyperbolicPlane& s, const Mobius& g, const Mobius& h);

// ---- Euclidean plane: rigid motions. ----
RigidMotion identity(const EuclideanPlane& s);
RigidMotion compose(const EuclideanPlane& s, const RigidMotion& g, const RigidMotion& h);
void accumulate(const EuclideanPlane& s, RigidMotion& g, const RigidMotion& h);
RigidMotion inverse(const EuclideanPlane& s, const RigidMotion& g);
geometry::EucPoint act(const EuclideanPlane& s, const RigidMotion& g, const geometry::EucPoint& x);
geometry::EucDirection act_boundary(const EuclideanPlane& s, const RigidMotion& g,
                                    const geometry::EucDirection& xi);
double displacement(const EuclideanPlane& s, const RigidMotion& g, const geometry::EucPoint& o);
double orbit_busemann(const EuclideanPlane& s, const geometry::EucDirection& xi,
                      const geometry::EucPoint& o, const RigidMotion& g);
double cocycle(const EuclideanPlane& s, const RigidMotion& g,
               const geometry::EucDirection& xi, const geometry::EucPoint& o);
geometry::EucDirection orbit_ray(const EuclideanPlane& s, const RigidMotion& g,
                                 const geometry::EucPoint& o);
Classification classify(const EuclideanPlane& s, const RigidMotion& g);
std::optional<geometry::EucSegment> axis_segment(const EuclideanPlane& s, const RigidMotion& g,
                                                 const geometry::EucPoint& o,
                                                 double half_length);
std::string format(const EuclideanPlane& s, const RigidMotion& g);
bool same(const EuclideanPlane& s, const RigidMotion& g, const RigidMotion& h);

// ---- Tree x line: pairs (word, shift). ----
TreeLineMotion identity(const TreeTimesLine& s);
TreeLineMotion compose(const TreeTimesLine& s, const TreeLineMotion& g, const TreeLineMotion& h);
void accumulate(const TreeTimesLine& s, TreeLineMotion& g, const TreeLineMotion& h);
TreeLineMotion inverse(const TreeTimesLine& s, const TreeLineMotion& g);
geometry::ProdPoint act(const TreeTimesLine& s, const TreeLineMotion& g,
                        const geometry::ProdPoint& x);
geometry::ProdRay act_boundary(const TreeTimesLine& s, const TreeLineMotion& g,
                               const geometry::ProdRay& xi);
double displacement(const TreeTimesLine& s, const TreeLineMotion& g, const geometry::ProdPoint& o);
double orbit_busemann(const TreeTimesLine& s, const geometry::ProdRay& xi,
                      const geometry::ProdPoint& o, const TreeLineMotion& g);
double cocycle(const TreeTimesLine& s, const TreeLineMotion& g, const geometry::ProdRay& xi,
               const geometry::ProdPoint& o);
geometry::ProdRay orbit_ray(const TreeTimesLine& s, const TreeLineMotion& g,
                            const geometry::ProdPoint& o);
Classification classify(const TreeTimesLine& s, const TreeLineMotion& g);
std::optional<geometry::ProdSegment> axis_segment(const TreeTimesLine& s,
                                                  const TreeLineMotion& g,
                                                  const geometry::ProdPoint& o,
                                                  double half_length);
std::string format(const TreeTimesLine& s, const TreeLineMotion& g);
bool same(const TreeTimesLine& s, const TreeLineMotion& g, const TreeLineMotion& h);

/// FNV-1a 64-bit hash of the canonical text form, as 16 hex digits.
std::string digest_text(const std::string& text);
template <class S>
std::string digest(const S& s, const Element<S>& g) {
  return digest_text(format(s, g));
}

/// acosh(e^L) computed stably for large L.
double acosh_exp(double log_x);

}  // namespace curtainlab::walker

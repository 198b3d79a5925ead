#pragma once

#include <cmath>

#include "curtainlab/walker/isometry.hpp"

namespace curtainlab::limitlaws {

using walker::Element;

/// beta(g, xi) = b_xi(g^-1 o).
template <class S>
double busemann_cocycle(const S& s, const Element<S>& g, const typename S::Boundary& xi,
                        const typename S::Point& o) {
  return walker::cocycle(s, g, xi, o);
}

/// beta(g1 g2, xi) - beta(g1, g2 xi) - beta(g2, xi).
template <class S>
double cocycle_residual(const S& s, const Element<S>& g1, const Element<S>& g2,
                        const typename S::Boundary& xi, const typename S::Point& o) {
  const double whole = busemann_cocycle(s, walker::compose(s, g1, g2), xi, o);
  const double first = busemann_cocycle(s, g1, walker::act_boundary(s, g2, xi), o);
  const double second = busemann_cocycle(s, g2, xi, o);
  return whole - first - second;
}

template <class S>
struct CocycleSample {
  Element<S> g;
  typename S::Boundary xi;
  double beta = 0.0;

  /// |beta| - d(g^-1 o, o); at most 0 for a 1-Lipschitz horofunction.
  double lipschitz_excess(const S& s, const typename S::Point& o) const {
    return std::abs(beta) - walker::displacement(s, walker::inverse(s, g), o);
  }
};

template <class S>
CocycleSample<S> cocycle_sample(const S& s, Element<S> g, typename S::Boundary xi,
                                const typename S::Point& o) {
  const double b = busemann_cocycle(s, g, xi, o);
  return {std::move(g), std::move(xi), b};
}

}  // namespace curtainlab::limitlaws

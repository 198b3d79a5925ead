#pragma once

#include "curtainlab/geometry/alphabet.hpp"
#include "curtainlab/geometry/common.hpp"
#include "curtainlab/geometry/euclidean.hpp"
#include "curtainlab/geometry/hyperbolic.hpp"
#include "curtainlab/geometry/product.hpp"
#include "curtainlab/geometry/tree.hpp"

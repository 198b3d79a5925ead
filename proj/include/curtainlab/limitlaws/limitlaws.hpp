#pragma once

#include "curtainlab/limitlaws/boundary.hpp"
#include "curtainlab/limitlaws/clt.hpp"
#include "curtainlab/limitlaws/cocycle.hpp"
#include "curtainlab/limitlaws/cylinders.hpp"
#include "curtainlab/limitlaws/drift.hpp"
#include "curtainlab/limitlaws/loxodromic.hpp"
#include "curtainlab/limitlaws/psi.hpp"
#include "curtainlab/limitlaws/trajectory.hpp"

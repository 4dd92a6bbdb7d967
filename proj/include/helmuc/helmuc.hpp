#pragma once

// Stabilized P1 finite elements for the Helmholtz unique-continuation
// problem: recover u on a target set B from data on omega subset B, without
// boundary conditions, via a regularized primal-dual saddle-point system.

#include "analysis.hpp"
#include "assembly.hpp"
#include "experiment.hpp"
#include "geometry.hpp"
#include "mesh.hpp"
#include "problems.hpp"
#include "quadrature.hpp"
#include "solver.hpp"
#include "sparse.hpp"

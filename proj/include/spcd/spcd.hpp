#pragma once

// Umbrella header: finite difference solver for the singularly perturbed
// convection-diffusion problem -eps u'' + a(x) u' = f(x) on (0, 1).

#include "spcd/analysis.hpp"
#include "spcd/assembly.hpp"
#include "spcd/mesh.hpp"
#include "spcd/problem.hpp"
#include "spcd/thomas.hpp"

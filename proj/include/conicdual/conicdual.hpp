#pragma once

// Core engine. Problem-file and report I/O live in conicdual/io.hpp, which
// additionally needs yaml-cpp.
#include "conicdual/cone.hpp"
#include "conicdual/conditions.hpp"
#include "conicdual/extended.hpp"
#include "conicdual/farkas.hpp"
#include "conicdual/gale.hpp"
#include "conicdual/linear_map.hpp"
#include "conicdual/lp/fourier_motzkin.hpp"
#include "conicdual/lp/simplex.hpp"
#include "conicdual/perturb.hpp"
#include "conicdual/problem.hpp"
#include "conicdual/rational.hpp"
#include "conicdual/values.hpp"
#include "conicdual/vector.hpp"

#pragma once

#include "allhops/baselines.hpp"
#include "allhops/dist_matrix.hpp"
#include "allhops/error.hpp"
#include "allhops/ext_int.hpp"
#include "allhops/graph.hpp"
#include "allhops/minplus.hpp"
#include "allhops/oracles.hpp"
#include "allhops/parallel.hpp"
#include "allhops/random.hpp"
#include "allhops/reductions.hpp"
#include "allhops/sampling.hpp"
#include "allhops/solvers.hpp"

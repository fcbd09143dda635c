#pragma once

// Umbrella header for the randomized progressive training library.

#include "rpt/bench.hpp"
#include "rpt/block_partition.hpp"
#include "rpt/config.hpp"
#include "rpt/cost_model.hpp"
#include "rpt/dataset.hpp"
#include "rpt/errors.hpp"
#include "rpt/linalg.hpp"
#include "rpt/problem.hpp"
#include "rpt/quadratic.hpp"
#include "rpt/random_instances.hpp"
#include "rpt/ridge.hpp"
#include "rpt/rng.hpp"
#include "rpt/scheduler.hpp"
#include "rpt/sketch.hpp"
#include "rpt/smoothness.hpp"
#include "rpt/solver.hpp"
#include "rpt/spectral.hpp"
#include "rpt/sym_matrix.hpp"
#include "rpt/trace_io.hpp"
#include "rpt/verify.hpp"
#include "rpt/version.hpp"

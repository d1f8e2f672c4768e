#pragma once

#include "axmap/errors.hpp"
#include "axmap/exact.hpp"
#include "axmap/genetic.hpp"
#include "axmap/greedy.hpp"
#include "axmap/io.hpp"
#include "axmap/lap.hpp"
#include "axmap/linkage.hpp"
#include "axmap/multistart.hpp"
#include "axmap/rng.hpp"
#include "axmap/solver.hpp"
#include "axmap/stats.hpp"
#include "axmap/tensor.hpp"
#include "axmap/vlsn.hpp"

#pragma once

#include "twbb/bench.hpp"
#include "twbb/decomposition.hpp"
#include "twbb/elimination_order.hpp"
#include "twbb/errors.hpp"
#include "twbb/generators.hpp"
#include "twbb/graph.hpp"
#include "twbb/heuristics.hpp"
#include "twbb/io.hpp"
#include "twbb/lower_bounds.hpp"
#include "twbb/oracle.hpp"
#include "twbb/reduce.hpp"
#include "twbb/rng.hpp"
#include "twbb/search.hpp"
#include "twbb/vertex_set.hpp"

#pragma once

#include "frechet/bench.hpp"
#include "frechet/embedded_graph.hpp"
#include "frechet/errors.hpp"
#include "frechet/general_graph.hpp"
#include "frechet/geometry.hpp"
#include "frechet/graph_io.hpp"
#include "frechet/isomorphism.hpp"
#include "frechet/matching.hpp"
#include "frechet/oracle.hpp"
#include "frechet/tree_frechet.hpp"

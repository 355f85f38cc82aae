#pragma once

#include "hpws/cli.hpp"
#include "hpws/dijkstra.hpp"
#include "hpws/error.hpp"
#include "hpws/harness.hpp"
#include "hpws/heavy_path.hpp"
#include "hpws/hypercube.hpp"
#include "hpws/io.hpp"
#include "hpws/metric.hpp"
#include "hpws/net_tree.hpp"
#include "hpws/points.hpp"
#include "hpws/quadtree.hpp"
#include "hpws/random.hpp"
#include "hpws/routing.hpp"
#include "hpws/spanner.hpp"
#include "hpws/verify.hpp"
#include "hpws/wspd.hpp"

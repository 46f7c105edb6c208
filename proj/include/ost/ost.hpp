#pragma once

#include "ost/algorithms.hpp"
#include "ost/dimacs.hpp"
#include "ost/experiment.hpp"
#include "ost/generators.hpp"
#include "ost/graph.hpp"
#include "ost/instance.hpp"
#include "ost/instance_io.hpp"
#include "ost/metric.hpp"
#include "ost/online_directed.hpp"
#include "ost/online_undirected.hpp"
#include "ost/oracle.hpp"
#include "ost/plan.hpp"
#include "ost/predictions.hpp"
#include "ost/random.hpp"
#include "ost/shortest_path.hpp"
#include "ost/tree.hpp"
#include "ost/union_find.hpp"

#pragma once

#include "reevrp/types.hpp"
#include "reevrp/instance.hpp"
#include "reevrp/model.hpp"
#include "reevrp/io.hpp"
#include "reevrp/rng.hpp"

#include "reevrp/its/solver.hpp"

#include "reevrp/exact/columns.hpp"
#include "reevrp/exact/enumerate.hpp"
#include "reevrp/exact/set_partition.hpp"

#include "reevrp/pricing/duals.hpp"
#include "reevrp/pricing/flow.hpp"
#include "reevrp/pricing/ipec.hpp"
#include "reevrp/pricing/labeling.hpp"
#include "reevrp/pricing/ng_sets.hpp"
#include "reevrp/pricing/rci.hpp"
#include "reevrp/pricing/strengthening.hpp"

#include "reevrp/harness/costs.hpp"
#include "reevrp/harness/depot_assignment.hpp"
#include "reevrp/harness/generator.hpp"
#include "reevrp/harness/held_karp.hpp"
#include "reevrp/harness/sweep.hpp"

#pragma once

#include "fppn/bundles.hpp"
#include "fppn/channel.hpp"
#include "fppn/gantt.hpp"
#include "fppn/io.hpp"
#include "fppn/model.hpp"
#include "fppn/schedule.hpp"
#include "fppn/sim.hpp"
#include "fppn/taskgraph.hpp"
#include "fppn/time.hpp"

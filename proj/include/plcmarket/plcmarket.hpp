#pragma once

#include "plcmarket/demand.hpp"
#include "plcmarket/economy_graph.hpp"
#include "plcmarket/error.hpp"
#include "plcmarket/game.hpp"
#include "plcmarket/json_io.hpp"
#include "plcmarket/market.hpp"
#include "plcmarket/max_flow.hpp"
#include "plcmarket/pipeline.hpp"
#include "plcmarket/plc.hpp"
#include "plcmarket/price_regulating.hpp"
#include "plcmarket/rational.hpp"
#include "plcmarket/reduction.hpp"
#include "plcmarket/search.hpp"
#include "plcmarket/support_enum.hpp"
#include "plcmarket/verifier.hpp"

#pragma once

#include "hjtoric/arith.hpp"
#include "hjtoric/blowup_config.hpp"
#include "hjtoric/circle_sim.hpp"
#include "hjtoric/errors.hpp"
#include "hjtoric/hj.hpp"
#include "hjtoric/homology.hpp"
#include "hjtoric/io.hpp"
#include "hjtoric/resolution.hpp"
#include "hjtoric/svg.hpp"
#include "hjtoric/toric.hpp"
#include "hjtoric/weighted_blowup.hpp"

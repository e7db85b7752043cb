#pragma once

#include "entdist/cost.hpp"
#include "entdist/engine.hpp"
#include "entdist/error.hpp"
#include "entdist/fidelity.hpp"
#include "entdist/heap.hpp"
#include "entdist/memory.hpp"
#include "entdist/network.hpp"
#include "entdist/random.hpp"
#include "entdist/scenario.hpp"
#include "entdist/version.hpp"

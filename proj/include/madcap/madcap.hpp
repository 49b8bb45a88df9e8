#pragma once

#include "madcap/capacity.hpp"
#include "madcap/channel.hpp"
#include "madcap/cli.hpp"
#include "madcap/ensembles.hpp"
#include "madcap/optimize.hpp"
#include "madcap/qmat.hpp"
#include "madcap/random_states.hpp"

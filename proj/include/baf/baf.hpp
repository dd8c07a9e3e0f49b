#pragma once

#include "baf/bench.hpp"
#include "baf/core.hpp"
#include "baf/error.hpp"
#include "baf/exact.hpp"
#include "baf/generators.hpp"
#include "baf/greedy.hpp"
#include "baf/io.hpp"
#include "baf/mixedcrit.hpp"
#include "baf/rational.hpp"
#include "baf/rounding.hpp"
#include "baf/schemes.hpp"

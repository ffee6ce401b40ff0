#pragma once

#include "maxac/baselines.hpp"
#include "maxac/capacity_analytic.hpp"
#include "maxac/capacity_numeric.hpp"
#include "maxac/datagen.hpp"
#include "maxac/error.hpp"
#include "maxac/linalg.hpp"
#include "maxac/parallel.hpp"
#include "maxac/philox.hpp"
#include "maxac/rank_selection.hpp"
#include "maxac/transform_space.hpp"

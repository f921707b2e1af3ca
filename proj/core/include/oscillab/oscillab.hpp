#pragma once

#include "oscillab/bmo.hpp"
#include "oscillab/error.hpp"
#include "oscillab/extraction.hpp"
#include "oscillab/fixtures.hpp"
#include "oscillab/fourier.hpp"
#include "oscillab/grid.hpp"
#include "oscillab/kernel.hpp"
#include "oscillab/operators.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/spaces.hpp"
#include "oscillab/sweep.hpp"
#include "oscillab/version.hpp"
#include "oscillab/weights.hpp"

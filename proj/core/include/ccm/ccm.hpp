#pragma once

// Umbrella header.
#include "ccm/bench.hpp"
#include "ccm/dataio.hpp"
#include "ccm/dataset.hpp"
#include "ccm/errors.hpp"
#include "ccm/kernels.hpp"
#include "ccm/objective.hpp"
#include "ccm/optimizer.hpp"
#include "ccm/oracle.hpp"
#include "ccm/random_features.hpp"
#include "ccm/synthdata.hpp"

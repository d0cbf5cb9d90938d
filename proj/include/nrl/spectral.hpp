#pragma once

#include "nrl/spectral/field.hpp"
#include "nrl/spectral/grid.hpp"
#include "nrl/spectral/ops.hpp"
#include "nrl/spectral/snapshot.hpp"

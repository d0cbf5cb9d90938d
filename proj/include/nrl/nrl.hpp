#pragma once

#include "nrl/algebra/system.hpp"
#include "nrl/kg/kg.hpp"
#include "nrl/nls/nls.hpp"
#include "nrl/spectral.hpp"
#include "nrl/wkb/wkb.hpp"

#pragma once

#include "kmsent/adiabatic.hpp"
#include "kmsent/entropy.hpp"
#include "kmsent/errors.hpp"
#include "kmsent/findim/connected.hpp"
#include "kmsent/findim/expansions.hpp"
#include "kmsent/findim/linalg.hpp"
#include "kmsent/findim/random.hpp"
#include "kmsent/findim/series.hpp"
#include "kmsent/findim/states.hpp"
#include "kmsent/findim/system.hpp"
#include "kmsent/findim/taylor.hpp"
#include "kmsent/functionals.hpp"
#include "kmsent/quadrature.hpp"
#include "kmsent/spectral.hpp"
#include "kmsent/thermal.hpp"

#pragma once

// Umbrella header for the spinvdw library.

#include "spinvdw/analysis.hpp"
#include "spinvdw/baseline.hpp"
#include "spinvdw/checks.hpp"
#include "spinvdw/configurations.hpp"
#include "spinvdw/errors.hpp"
#include "spinvdw/io.hpp"
#include "spinvdw/oracle.hpp"
#include "spinvdw/quadrature.hpp"
#include "spinvdw/response.hpp"
#include "spinvdw/rotation.hpp"
#include "spinvdw/spectral.hpp"
#include "spinvdw/sweep.hpp"
#include "spinvdw/units.hpp"

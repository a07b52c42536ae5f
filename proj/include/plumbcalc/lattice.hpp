#pragma once

#include "plumbcalc/lattice/characteristic.hpp"
#include "plumbcalc/lattice/classify.hpp"
#include "plumbcalc/lattice/enumeration.hpp"
#include "plumbcalc/lattice/gram_lattice.hpp"
#include "plumbcalc/lattice/isometry.hpp"
#include "plumbcalc/lattice/linear_algebra.hpp"
#include "plumbcalc/lattice/minimalize.hpp"

#pragma once

#include "plumbcalc/continued_fraction.hpp"
#include "plumbcalc/correction_terms.hpp"
#include "plumbcalc/error.hpp"
#include "plumbcalc/families.hpp"
#include "plumbcalc/lattice.hpp"
#include "plumbcalc/number_theory.hpp"
#include "plumbcalc/plumbing.hpp"
#include "plumbcalc/rational.hpp"
#include "plumbcalc/io.hpp"
#include "plumbcalc/version.hpp"

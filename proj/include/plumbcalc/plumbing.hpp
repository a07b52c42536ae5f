#pragma once

#include "plumbcalc/plumbing/chain.hpp"
#include "plumbcalc/plumbing/graph.hpp"
#include "plumbcalc/plumbing/invariants.hpp"
#include "plumbcalc/plumbing/seifert.hpp"

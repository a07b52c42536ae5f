#pragma once

#include "plumbcalc/families/report.hpp"
#include "plumbcalc/families/surgery.hpp"
#include "plumbcalc/families/tables.hpp"
#include "plumbcalc/families/verify.hpp"

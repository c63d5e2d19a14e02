// subst.hpp -- umbrella header.
#pragma once

#include "analysis.hpp"
#include "config.hpp"
#include "core.hpp"
#include "dl_check.hpp"
#include "fixpoint.hpp"
#include "growth.hpp"
#include "lang.hpp"
#include "lprim.hpp"
#include "reach.hpp"
#include "recurrence.hpp"
#include "tame.hpp"
#include "verdict.hpp"

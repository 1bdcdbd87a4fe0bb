#pragma once

#include "walkgrowth/bounds.hpp"
#include "walkgrowth/enumeration.hpp"
#include "walkgrowth/errors.hpp"
#include "walkgrowth/essential.hpp"
#include "walkgrowth/format.hpp"
#include "walkgrowth/growth_bound.hpp"
#include "walkgrowth/halfplane.hpp"
#include "walkgrowth/logconvex.hpp"
#include "walkgrowth/orthant.hpp"
#include "walkgrowth/parallel.hpp"
#include "walkgrowth/report.hpp"
#include "walkgrowth/smallsteps.hpp"
#include "walkgrowth/stepset.hpp"

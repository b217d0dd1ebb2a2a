#pragma once

#include "lsderiv/error.hpp"
#include "lsderiv/series.hpp"
#include "lsderiv/regression.hpp"
#include "lsderiv/savgol.hpp"
#include "lsderiv/estimate.hpp"
#include "lsderiv/pe.hpp"
#include "lsderiv/rpe.hpp"
#include "lsderiv/ssa.hpp"
#include "lsderiv/signals.hpp"
#include "lsderiv/csv.hpp"
#include "lsderiv/report.hpp"

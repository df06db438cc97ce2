#pragma once

// Convenience umbrella for the whole library.
#include <qrat/algebra.hpp>
#include <qrat/cnp.hpp>
#include <qrat/core.hpp>
#include <qrat/interp.hpp>
#include <qrat/jordan.hpp>
#include <qrat/kernels.hpp>
#include <qrat/qcalc.hpp>
#include <qrat/realization.hpp>
#include <qrat/state_space.hpp>

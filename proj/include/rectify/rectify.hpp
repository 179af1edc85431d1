#pragma once

#include "rectify/arc_length.hpp"
#include "rectify/check_report.hpp"
#include "rectify/errors.hpp"
#include "rectify/fixtures.hpp"
#include "rectify/frenet.hpp"
#include "rectify/isometry.hpp"
#include "rectify/numerics.hpp"
#include "rectify/param_curve.hpp"
#include "rectify/surface.hpp"
#include "rectify/surface_curve.hpp"
#include "rectify/tolerances.hpp"

#pragma once

#include "trigspline/dataset_io.hpp"
#include "trigspline/errors.hpp"
#include "trigspline/factors.hpp"
#include "trigspline/grid.hpp"
#include "trigspline/kernel.hpp"
#include "trigspline/poly_splines.hpp"
#include "trigspline/spline.hpp"
#include "trigspline/trig_poly.hpp"

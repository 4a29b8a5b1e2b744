#ifndef GED_GED_HPP
#define GED_GED_HPP

#include "ged/scalar.hpp"
#include "ged/diff.hpp"
#include "ged/field.hpp"
#include "ged/chart.hpp"
#include "ged/smallmat.hpp"
#include "ged/form11.hpp"
#include "ged/metric.hpp"
#include "ged/curvature.hpp"
#include "ged/wirtinger.hpp"
#include "ged/projbundle.hpp"
#include "ged/maps.hpp"
#include "ged/energy.hpp"
#include "ged/verify.hpp"
#include "ged/zoo.hpp"
#include "ged/expr.hpp"
#include "ged/runner.hpp"

#endif  // GED_GED_HPP

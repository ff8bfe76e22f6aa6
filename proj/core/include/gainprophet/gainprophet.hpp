#pragma once

#include "gainprophet/core_model.hpp"
#include "gainprophet/csv.hpp"
#include "gainprophet/errors.hpp"
#include "gainprophet/fuzzy.hpp"
#include "gainprophet/mining.hpp"
#include "gainprophet/predictors.hpp"
#include "gainprophet/stats.hpp"

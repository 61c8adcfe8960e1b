#pragma once

#include "ratmap/dynamics.hpp"
#include "ratmap/error.hpp"
#include "ratmap/golden.hpp"
#include "ratmap/model.hpp"
#include "ratmap/params.hpp"
#include "ratmap/poly.hpp"
#include "ratmap/report.hpp"
#include "ratmap/structures.hpp"
#include "ratmap/thresholds.hpp"

#pragma once

#include "funkfinsler/curvature.hpp"
#include "funkfinsler/differentiation.hpp"
#include "funkfinsler/distance.hpp"
#include "funkfinsler/dual.hpp"
#include "funkfinsler/errors.hpp"
#include "funkfinsler/geometry.hpp"
#include "funkfinsler/metric.hpp"
#include "funkfinsler/oracle.hpp"
#include "funkfinsler/parallel.hpp"
#include "funkfinsler/report.hpp"
#include "funkfinsler/sampling.hpp"
#include "funkfinsler/tensor.hpp"
#include "funkfinsler/verify.hpp"
#include "funkfinsler/zermelo.hpp"

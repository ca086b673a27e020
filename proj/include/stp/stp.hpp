#pragma once

#include "stp/basis.hpp"
#include "stp/error.hpp"
#include "stp/kernels.hpp"
#include "stp/matrix.hpp"
#include "stp/metric.hpp"
#include "stp/quotient.hpp"
#include "stp/ratio.hpp"
#include "stp/scalar.hpp"
#include "stp/semi_tensor.hpp"

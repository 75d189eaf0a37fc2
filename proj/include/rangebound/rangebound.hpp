#pragma once

#include "rangebound/coefficients.hpp"
#include "rangebound/errors.hpp"
#include "rangebound/grid.hpp"
#include "rangebound/path.hpp"
#include "rangebound/quadrature.hpp"
#include "rangebound/rotation.hpp"
#include "rangebound/transform.hpp"
#include "rangebound/verification.hpp"
#include "rangebound/wiener.hpp"

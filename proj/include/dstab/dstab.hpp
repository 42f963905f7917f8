#pragma once

#include "dstab/rational.hpp"
#include "dstab/hn_core.hpp"
#include "dstab/factor.hpp"
#include "dstab/arith_cats.hpp"
#include "dstab/binom_poly.hpp"
#include "dstab/p1_sheaves.hpp"
#include "dstab/surface_bounds.hpp"
#include "dstab/tilt_charge.hpp"

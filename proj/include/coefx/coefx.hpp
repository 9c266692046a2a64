#pragma once

#include "coefx/annulus.hpp"
#include "coefx/bivariate.hpp"
#include "coefx/bracket.hpp"
#include "coefx/coupon.hpp"
#include "coefx/errors.hpp"
#include "coefx/exppoly.hpp"
#include "coefx/expr.hpp"
#include "coefx/format.hpp"
#include "coefx/identities.hpp"
#include "coefx/inversion.hpp"
#include "coefx/laurent.hpp"
#include "coefx/rational.hpp"

#pragma once

#include "assocnorm/error.hpp"
#include "assocnorm/quadrature.hpp"
#include "assocnorm/weights.hpp"
#include "assocnorm/equilibrium.hpp"
#include "assocnorm/function.hpp"
#include "assocnorm/functionals.hpp"
#include "assocnorm/constructions.hpp"
#include "assocnorm/duality.hpp"

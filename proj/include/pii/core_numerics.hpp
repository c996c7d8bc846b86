#pragma once

#include "pii/core/jet.hpp"
#include "pii/core/linalg.hpp"
#include "pii/core/ode.hpp"
#include "pii/core/quadrature.hpp"
#include "pii/core/trajectory.hpp"

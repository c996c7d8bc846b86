#pragma once

#include "pii/specfun/airy.hpp"
#include "pii/specfun/bessel.hpp"
#include "pii/specfun/gamma.hpp"

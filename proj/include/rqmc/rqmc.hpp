#pragma once

#include "rqmc/core.hpp"
#include "rqmc/correspondence.hpp"
#include "rqmc/densities.hpp"
#include "rqmc/fourier.hpp"
#include "rqmc/parallel.hpp"
#include "rqmc/quadrature.hpp"
#include "rqmc/specfun.hpp"
#include "rqmc/spectra.hpp"

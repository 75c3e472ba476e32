#pragma once

// Umbrella header: large-time asymptotics of the modified Camassa-Holm
// equation on a unit background, plus the pseudospectral reference
// integrator used to cross-validate the reflection-independent
// predictions.

#include "mch/asymptotic_coeffs.hpp"
#include "mch/cauchy_engine.hpp"
#include "mch/errors.hpp"
#include "mch/fft.hpp"
#include "mch/matrix2.hpp"
#include "mch/pde_reference.hpp"
#include "mch/phase_geometry.hpp"
#include "mch/quadrature.hpp"
#include "mch/reflection.hpp"
#include "mch/rh_algebra.hpp"
#include "mch/special_functions.hpp"
#include "mch/wave_analysis.hpp"

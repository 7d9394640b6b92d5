#ifndef MGALE_MGALE_HPP
#define MGALE_MGALE_HPP

#include "mgale/scalar.hpp"
#include "mgale/extended.hpp"
#include "mgale/measure.hpp"
#include "mgale/condexp.hpp"
#include "mgale/process.hpp"
#include "mgale/stopping.hpp"
#include "mgale/crossings.hpp"
#include "mgale/uniform_integrability.hpp"
#include "mgale/convergence.hpp"
#include "mgale/montecarlo.hpp"
#include "mgale/borel_cantelli.hpp"
#include "mgale/fixtures.hpp"

#endif  // MGALE_MGALE_HPP

#pragma once

// Umbrella header: truncated Fock-space states and operators, the superposed
// product operation s(a a†) + t(a† a), phase-space quasiprobabilities,
// nonclassicality indicators, and the heralded interferometer simulator.

#include "supop/errors.hpp"
#include "supop/fock.hpp"
#include "supop/indicators.hpp"
#include "supop/laguerre.hpp"
#include "supop/quasiprob.hpp"
#include "supop/scheme.hpp"
#include "supop/sup.hpp"

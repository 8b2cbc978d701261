#pragma once

// Umbrella header for the whole library.

#include "eaas/composition.hpp"
#include "eaas/config.hpp"
#include "eaas/context.hpp"
#include "eaas/core.hpp"
#include "eaas/csv.hpp"
#include "eaas/demand.hpp"
#include "eaas/expectation.hpp"
#include "eaas/experiment.hpp"
#include "eaas/trust.hpp"
#include "eaas/workload.hpp"

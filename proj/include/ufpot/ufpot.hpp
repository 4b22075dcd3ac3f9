#pragma once

#include "ufpot/ackermann.hpp"
#include "ufpot/disjoint_set.hpp"
#include "ufpot/harness.hpp"
#include "ufpot/instrument.hpp"
#include "ufpot/potentials.hpp"
#include "ufpot/random.hpp"
#include "ufpot/report.hpp"
#include "ufpot/shadow_forest.hpp"
#include "ufpot/workloads.hpp"

#pragma once

#include "biv/batch.hpp"
#include "biv/black_scholes.hpp"
#include "biv/dual.hpp"
#include "biv/error.hpp"
#include "biv/ingest.hpp"
#include "biv/lattice.hpp"
#include "biv/simulate.hpp"
#include "biv/solver.hpp"

#pragma once

// Core library: exact fields, sets, energies, graphs, incidences, solvers.

#include "sumprod/arith_set.hpp"
#include "sumprod/basis_graph.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/error.hpp"
#include "sumprod/field.hpp"
#include "sumprod/fit.hpp"
#include "sumprod/incidence.hpp"
#include "sumprod/limits.hpp"
#include "sumprod/oracle.hpp"
#include "sumprod/popdiff.hpp"
#include "sumprod/rational.hpp"
#include "sumprod/residue.hpp"
#include "sumprod/set_io.hpp"
#include "sumprod/set_ops.hpp"
#include "sumprod/solvers.hpp"

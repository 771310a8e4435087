#pragma once

#include "dhs/core.hpp"
#include "dhs/multigraph.hpp"
#include "dhs/reduce.hpp"
#include "dhs/support.hpp"
#include "dhs/inequalities.hpp"
#include "dhs/oracle.hpp"
#include "dhs/solver.hpp"
#include "dhs/io.hpp"

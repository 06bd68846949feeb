#pragma once

#include "fdnet/analytic.hpp"
#include "fdnet/model.hpp"
#include "fdnet/parallel.hpp"
#include "fdnet/quadrature.hpp"
#include "fdnet/simulator.hpp"
#include "fdnet/throughput.hpp"

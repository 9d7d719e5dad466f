#pragma once

#include "momentkit/error.hpp"
#include "momentkit/linalg.hpp"
#include "momentkit/moment_point.hpp"
#include "momentkit/subspace.hpp"
#include "momentkit/moment.hpp"
#include "momentkit/density.hpp"
#include "momentkit/frank_wolfe.hpp"
#include "momentkit/projection.hpp"
#include "momentkit/directions.hpp"
#include "momentkit/parallel.hpp"
#include "momentkit/jnr.hpp"
#include "momentkit/minimality.hpp"

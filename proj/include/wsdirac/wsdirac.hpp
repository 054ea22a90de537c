#pragma once

// Umbrella header for the D-dimensional Dirac / Woods-Saxon solver.

#include "wsdirac/errors.hpp"
#include "wsdirac/oracle.hpp"
#include "wsdirac/params.hpp"
#include "wsdirac/pekeris.hpp"
#include "wsdirac/roots.hpp"
#include "wsdirac/spectrum.hpp"
#include "wsdirac/susyqm.hpp"
#include "wsdirac/wavefunction.hpp"

#pragma once

// Umbrella header for the squeezing noise-ellipse rotation toolkit.

#include "sqzrot/commands.hpp"
#include "sqzrot/csv.hpp"
#include "sqzrot/deconvolution.hpp"
#include "sqzrot/envelope.hpp"
#include "sqzrot/errors.hpp"
#include "sqzrot/fft.hpp"
#include "sqzrot/fixture.hpp"
#include "sqzrot/grid.hpp"
#include "sqzrot/langevin.hpp"
#include "sqzrot/phase_model.hpp"
#include "sqzrot/runconfig.hpp"
#include "sqzrot/sideband.hpp"
#include "sqzrot/svg.hpp"
#include "sqzrot/trace.hpp"
#include "sqzrot/units.hpp"

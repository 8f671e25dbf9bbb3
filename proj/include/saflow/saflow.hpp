#pragma once

// Geometric Schrödinger-Airy flows of closed loops into Kähler targets:
// target geometry kernels, spectral loop calculus, the flow integrator,
// conservation-law monitors, Hasimoto transforms, vortex filaments and the
// scalar reference solver, plus the configuration-driven experiment runner.

#include "saflow/config.hpp"
#include "saflow/errors.hpp"
#include "saflow/fft.hpp"
#include "saflow/filament.hpp"
#include "saflow/flow.hpp"
#include "saflow/geometry.hpp"
#include "saflow/hasimoto.hpp"
#include "saflow/initial_data.hpp"
#include "saflow/invariants.hpp"
#include "saflow/io.hpp"
#include "saflow/loop.hpp"
#include "saflow/runner.hpp"
#include "saflow/scalar_pde.hpp"

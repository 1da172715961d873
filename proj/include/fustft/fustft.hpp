#pragma once

// Frequency-undersampled short-time Fourier transforms and their
// least-squares inverses.

#include "fustft/bench.hpp"
#include "fustft/container.hpp"
#include "fustft/errors.hpp"
#include "fustft/fft.hpp"
#include "fustft/inversion.hpp"
#include "fustft/normal_eq.hpp"
#include "fustft/power_csv.hpp"
#include "fustft/solvers.hpp"
#include "fustft/transforms.hpp"
#include "fustft/types.hpp"
#include "fustft/wav.hpp"
#include "fustft/window.hpp"
#include "fustft/window_validation.hpp"

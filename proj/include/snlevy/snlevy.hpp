#pragma once

// Scale functions, occupation-time transforms and Parisian ruin for
// spectrally negative Levy processes, plus the Monte Carlo oracle that keeps
// the formulas honest.

#include "snlevy/claim_distribution.hpp"
#include "snlevy/fluctuation.hpp"
#include "snlevy/laplace_inversion.hpp"
#include "snlevy/levy_model.hpp"
#include "snlevy/mc/simulate.hpp"
#include "snlevy/model_config.hpp"
#include "snlevy/occupation.hpp"
#include "snlevy/scale_evaluator.hpp"
#include "snlevy/verify.hpp"

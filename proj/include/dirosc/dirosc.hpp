#pragma once

#include "dirosc/params.hpp"
#include "dirosc/algebra.hpp"
#include "dirosc/eigensolver.hpp"
#include "dirosc/sectors.hpp"
#include "dirosc/spectra.hpp"
#include "dirosc/dynamics.hpp"
#include "dirosc/oracles.hpp"
#include "dirosc/harness/config.hpp"
#include "dirosc/harness/output.hpp"
#include "dirosc/harness/runs.hpp"
#include "dirosc/harness/acceptance.hpp"

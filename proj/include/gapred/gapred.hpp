#pragma once

#include "gapred/certify.hpp"
#include "gapred/clustering.hpp"
#include "gapred/cov_to_vcsp.hpp"
#include "gapred/error.hpp"
#include "gapred/generators.hpp"
#include "gapred/instances.hpp"
#include "gapred/maxcover_reduction.hpp"
#include "gapred/oracles.hpp"
#include "gapred/pipeline.hpp"
#include "gapred/rational.hpp"
#include "gapred/serialize.hpp"
#include "gapred/universe_reduction.hpp"
#include "gapred/vcsp_to_csp.hpp"

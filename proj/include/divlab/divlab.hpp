#pragma once

#include "divlab/cli.hpp"
#include "divlab/divisor.hpp"
#include "divlab/experiments.hpp"
#include "divlab/numkernel.hpp"
#include "divlab/stochastic.hpp"
#include "divlab/svg.hpp"

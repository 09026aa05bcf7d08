#pragma once

#include "steerlab/eig3.hpp"
#include "steerlab/harness.hpp"
#include "steerlab/nelder_mead.hpp"
#include "steerlab/oracles.hpp"
#include "steerlab/rng.hpp"
#include "steerlab/state.hpp"
#include "steerlab/steering_three.hpp"
#include "steerlab/steering_two.hpp"
#include "steerlab/vec3.hpp"
#include "steerlab/weiszfeld.hpp"

#pragma once

#include "raysep/error.hpp"
#include "raysep/geometry.hpp"
#include "raysep/synth.hpp"
#include "raysep/smoothing.hpp"
#include "raysep/cumulant.hpp"
#include "raysep/subspace.hpp"
#include "raysep/spectrum.hpp"
#include "raysep/io.hpp"
#include "raysep/pipeline.hpp"

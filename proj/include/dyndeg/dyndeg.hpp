#pragma once
// Umbrella header: exact degree sequences, dynamical degrees and relative
// dynamical degrees of dominant correspondences on catalog varieties.

#include "dyndeg/scene.hpp"

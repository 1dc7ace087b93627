#pragma once

#include "weyllab/algebra.hpp"
#include "weyllab/error.hpp"
#include "weyllab/group.hpp"
#include "weyllab/io.hpp"
#include "weyllab/jacobi.hpp"
#include "weyllab/multiplier.hpp"
#include "weyllab/phase_space.hpp"
#include "weyllab/random.hpp"
#include "weyllab/suites.hpp"
#include "weyllab/weyl.hpp"

#pragma once

#include "rbody/configs.hpp"
#include "rbody/conjugacy.hpp"
#include "rbody/dynamics.hpp"
#include "rbody/ephemeris.hpp"
#include "rbody/errors.hpp"
#include "rbody/frames.hpp"
#include "rbody/integrate.hpp"
#include "rbody/shooting.hpp"
#include "rbody/symmetry.hpp"
#include "rbody/variational.hpp"
#include "rbody/vec2.hpp"

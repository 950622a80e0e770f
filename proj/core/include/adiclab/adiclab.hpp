#pragma once

#include "adiclab/rational.hpp"
#include "adiclab/digits.hpp"
#include "adiclab/digit_stats.hpp"
#include "adiclab/probability.hpp"
#include "adiclab/schedule.hpp"
#include "adiclab/constructors.hpp"
#include "adiclab/entropy.hpp"

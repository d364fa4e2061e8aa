#pragma once

#include "paircorr/errors.hpp"
#include "paircorr/hiprec.hpp"
#include "paircorr/numutil.hpp"
#include "paircorr/sequences.hpp"
#include "paircorr/pair_count.hpp"
#include "paircorr/cf.hpp"
#include "paircorr/threegap.hpp"
#include "paircorr/io.hpp"
#include "paircorr/verify.hpp"

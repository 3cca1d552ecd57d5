#pragma once

#include "sepdetect/errors.hpp"
#include "sepdetect/numerics.hpp"
#include "sepdetect/density.hpp"
#include "sepdetect/bloch.hpp"
#include "sepdetect/criteria.hpp"
#include "sepdetect/states.hpp"
#include "sepdetect/scan.hpp"
#include "sepdetect/parse.hpp"

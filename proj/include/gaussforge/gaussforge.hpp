#pragma once

#include "gaussforge/analysis.hpp"
#include "gaussforge/enumerate.hpp"
#include "gaussforge/error.hpp"
#include "gaussforge/gaussmap.hpp"
#include "gaussforge/gf.hpp"
#include "gaussforge/linproj.hpp"
#include "gaussforge/poly.hpp"
#include "gaussforge/random.hpp"

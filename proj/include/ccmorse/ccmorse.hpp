#pragma once

#include "ccmorse/core.hpp"
#include "ccmorse/linalg.hpp"
#include "ccmorse/polygon.hpp"
#include "ccmorse/morse.hpp"
#include "ccmorse/parallel.hpp"
#include "ccmorse/search.hpp"
#include "ccmorse/collinear.hpp"
#include "ccmorse/interval.hpp"
#include "ccmorse/rigor.hpp"

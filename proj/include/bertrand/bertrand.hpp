#pragma once

// Convenience header pulling in the whole library.

#include "bertrand/binomial.hpp"
#include "bertrand/checked.hpp"
#include "bertrand/hausdorff.hpp"
#include "bertrand/numeration.hpp"
#include "bertrand/parallel.hpp"
#include "bertrand/selfcheck.hpp"
#include "bertrand/star.hpp"
#include "bertrand/triangle.hpp"
#include "bertrand/words.hpp"

#pragma once

#include "planeset/exact_arith.hpp"
#include "planeset/geometry.hpp"
#include "planeset/canonical.hpp"
#include "planeset/orderly.hpp"
#include "planeset/line_decomposition.hpp"
#include "planeset/clique.hpp"
#include "planeset/surveys.hpp"
#include "planeset/serialize.hpp"
#include "planeset/search.hpp"

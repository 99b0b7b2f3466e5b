#pragma once

#include "tropmod/algebraic.hpp"
#include "tropmod/canonical.hpp"
#include "tropmod/contraction.hpp"
#include "tropmod/enumeration.hpp"
#include "tropmod/error.hpp"
#include "tropmod/graph.hpp"
#include "tropmod/io.hpp"
#include "tropmod/length.hpp"
#include "tropmod/metric.hpp"
#include "tropmod/parallel.hpp"

#pragma once

#include "semtab/cell_matrix.hpp"
#include "semtab/datagen.hpp"
#include "semtab/ensemble.hpp"
#include "semtab/errors.hpp"
#include "semtab/heuristics.hpp"
#include "semtab/metrics.hpp"
#include "semtab/records.hpp"
#include "semtab/similarity.hpp"
#include "semtab/statement.hpp"
#include "semtab/table.hpp"
#include "semtab/text.hpp"

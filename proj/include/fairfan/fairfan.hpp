#pragma once

#include "geometry.hpp"
#include "sector_table.hpp"
#include "partition.hpp"
#include "fairness.hpp"
#include "search.hpp"
#include "io.hpp"

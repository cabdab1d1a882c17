#pragma once

#include "teamcov/bounds.hpp"
#include "teamcov/diagnostics.hpp"
#include "teamcov/errors.hpp"
#include "teamcov/field.hpp"
#include "teamcov/geometry.hpp"
#include "teamcov/greedy.hpp"
#include "teamcov/grid.hpp"
#include "teamcov/oracle.hpp"
#include "teamcov/parallel.hpp"
#include "teamcov/pga.hpp"
#include "teamcov/pipeline.hpp"
#include "teamcov/report.hpp"
#include "teamcov/scenario.hpp"
#include "teamcov/sensing.hpp"
#include "teamcov/visibility.hpp"

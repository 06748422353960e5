#pragma once

#include "rspan/attack.hpp"
#include "rspan/common.hpp"
#include "rspan/composition.hpp"
#include "rspan/cover.hpp"
#include "rspan/expander.hpp"
#include "rspan/generators.hpp"
#include "rspan/graph.hpp"
#include "rspan/io.hpp"
#include "rspan/metric.hpp"
#include "rspan/planar.hpp"
#include "rspan/ramsey.hpp"
#include "rspan/suite.hpp"
#include "rspan/uniform.hpp"

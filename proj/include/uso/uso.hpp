#pragma once

// Umbrella header for the whole toolkit.

#include "uso/analysis.hpp"
#include "uso/census.hpp"
#include "uso/constructions.hpp"
#include "uso/cube.hpp"
#include "uso/dimset.hpp"
#include "uso/errors.hpp"
#include "uso/io.hpp"
#include "uso/iso.hpp"
#include "uso/lcp.hpp"
#include "uso/lgraph.hpp"
#include "uso/matrix.hpp"
#include "uso/rational.hpp"
#include "uso/report.hpp"

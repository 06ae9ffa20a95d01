#pragma once

/// Umbrella header: permittivity-plane screening of body-worn dielectrics.

#include "epsplane/classifier.hpp"
#include "epsplane/csv.hpp"
#include "epsplane/em_model.hpp"
#include "epsplane/errors.hpp"
#include "epsplane/geometry.hpp"
#include "epsplane/locus_solver.hpp"
#include "epsplane/material_db.hpp"
#include "epsplane/permittivity.hpp"
#include "epsplane/regions.hpp"
#include "epsplane/svg_plot.hpp"

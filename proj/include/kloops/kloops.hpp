#pragma once

#include "kloops/constructions.hpp"
#include "kloops/errors.hpp"
#include "kloops/identities.hpp"
#include "kloops/interp.hpp"
#include "kloops/loop.hpp"
#include "kloops/permutation.hpp"
#include "kloops/report.hpp"
#include "kloops/subloop.hpp"
#include "kloops/symetron.hpp"
#include "kloops/table.hpp"
#include "kloops/translations.hpp"

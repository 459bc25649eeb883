#pragma once

#include "hkp/rational.hpp"
#include "hkp/partition.hpp"
#include "hkp/profile.hpp"
#include "hkp/beta_scalar.hpp"
#include "hkp/sym_series.hpp"
#include "hkp/laurent.hpp"
#include "hkp/series_json.hpp"
#include "hkp/symfun.hpp"
#include "hkp/fock.hpp"
#include "hkp/hurwitz.hpp"
#include "hkp/kp.hpp"
#include "hkp/report.hpp"

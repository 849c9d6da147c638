#ifndef PILOTCAP_PILOTCAP_HPP
#define PILOTCAP_PILOTCAP_HPP

#include "pilotcap/errors.hpp"
#include "pilotcap/flash.hpp"
#include "pilotcap/montecarlo.hpp"
#include "pilotcap/optimize.hpp"
#include "pilotcap/peak_pilot.hpp"
#include "pilotcap/report.hpp"
#include "pilotcap/specfun.hpp"
#include "pilotcap/training.hpp"

#endif

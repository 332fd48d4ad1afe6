#ifndef FWDIS_FWDIS_HPP
#define FWDIS_FWDIS_HPP

#include "fwdis/instances.hpp"
#include "fwdis/io.hpp"
#include "fwdis/lp.hpp"
#include "fwdis/objectives.hpp"
#include "fwdis/oracle.hpp"
#include "fwdis/point.hpp"
#include "fwdis/regions.hpp"
#include "fwdis/schedule.hpp"
#include "fwdis/solver.hpp"

#endif  // FWDIS_FWDIS_HPP

#pragma once

#include "hecke/context.hpp"
#include "hecke/continued_fraction.hpp"
#include "hecke/errors.hpp"
#include "hecke/moebius.hpp"
#include "hecke/orbits.hpp"
#include "hecke/partition.hpp"
#include "hecke/serialize.hpp"
#include "hecke/specfun.hpp"
#include "hecke/transfer.hpp"
#include "hecke/zeta.hpp"

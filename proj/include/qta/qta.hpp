#pragma once

#include "qta/audit.hpp"
#include "qta/decibel.hpp"
#include "qta/error.hpp"
#include "qta/eve_info.hpp"
#include "qta/photon_stats.hpp"
#include "qta/reflectometry.hpp"
#include "qta/serialization.hpp"

#pragma once

#include "cubictheta/arith.hpp"
#include "cubictheta/cache.hpp"
#include "cubictheta/checked.hpp"
#include "cubictheta/cubic.hpp"
#include "cubictheta/error.hpp"
#include "cubictheta/pipeline.hpp"
#include "cubictheta/qform.hpp"
#include "cubictheta/serialize.hpp"
#include "cubictheta/theta.hpp"

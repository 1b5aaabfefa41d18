#pragma once

#include "littlewood/bounds.hpp"
#include "littlewood/dyadic.hpp"
#include "littlewood/errors.hpp"
#include "littlewood/extremal.hpp"
#include "littlewood/khinchine.hpp"
#include "littlewood/nested.hpp"
#include "littlewood/norm.hpp"
#include "littlewood/report_io.hpp"
#include "littlewood/tensor.hpp"
#include "littlewood/tensor_io.hpp"

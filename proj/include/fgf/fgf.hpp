#pragma once

#include "fgf/applications.hpp"
#include "fgf/bench.hpp"
#include "fgf/box_filter.hpp"
#include "fgf/error.hpp"
#include "fgf/guided_filter.hpp"
#include "fgf/image.hpp"
#include "fgf/image_io.hpp"
#include "fgf/params.hpp"
#include "fgf/resample.hpp"

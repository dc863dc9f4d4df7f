#pragma once

#include "leafquant/calibration.hpp"
#include "leafquant/colorspace.hpp"
#include "leafquant/config.hpp"
#include "leafquant/errors.hpp"
#include "leafquant/image_io.hpp"
#include "leafquant/image_write.hpp"
#include "leafquant/quantify.hpp"
#include "leafquant/raster.hpp"
#include "leafquant/runner.hpp"
#include "leafquant/segmentation.hpp"
#include "leafquant/synthgen.hpp"

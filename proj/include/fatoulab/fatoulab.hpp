#pragma once

#include "fatoulab/cf.hpp"
#include "fatoulab/complex.hpp"
#include "fatoulab/config.hpp"
#include "fatoulab/domain_u.hpp"
#include "fatoulab/exp_coords.hpp"
#include "fatoulab/fatou.hpp"
#include "fatoulab/lab.hpp"
#include "fatoulab/maps.hpp"
#include "fatoulab/orbit_io.hpp"
#include "fatoulab/parallel.hpp"
#include "fatoulab/precision.hpp"
#include "fatoulab/render.hpp"
#include "fatoulab/renorm.hpp"
#include "fatoulab/sectors.hpp"
#include "fatoulab/verify.hpp"

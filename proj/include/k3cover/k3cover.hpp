#pragma once

#include "tower.hpp"
#include "factor.hpp"
#include "embed.hpp"
#include "surface.hpp"
#include "smoothness.hpp"
#include "branch.hpp"
#include "weierstrass.hpp"
#include "model_map.hpp"
#include "genus1.hpp"
#include "torsion.hpp"
#include "pipeline.hpp"
#include "family.hpp"
#include "density.hpp"
#include "serialize.hpp"

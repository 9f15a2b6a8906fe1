#pragma once

#include "holefree/bitstring.hpp"
#include "holefree/bounds.hpp"
#include "holefree/embed.hpp"
#include "holefree/geom.hpp"
#include "holefree/goodset.hpp"
#include "holefree/holes.hpp"
#include "holefree/io.hpp"
#include "holefree/netgen.hpp"
#include "holefree/numeric.hpp"
#include "holefree/pipeline.hpp"
#include "holefree/rng.hpp"

#pragma once

#include "genlat/util.hpp"
#include "genlat/genset.hpp"
#include "genlat/gen_lattice.hpp"
#include "genlat/builders.hpp"
#include "genlat/poset.hpp"
#include "genlat/ingestion.hpp"
#include "genlat/minor.hpp"
#include "genlat/minor_poset.hpp"
#include "genlat/cd.hpp"
#include "genlat/strong_map.hpp"
#include "genlat/properties.hpp"
#include "genlat/zipping.hpp"

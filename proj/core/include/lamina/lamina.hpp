// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bitpack.hpp"
#include "blob.hpp"
#include "computed.hpp"
#include "extents.hpp"
#include "instrument.hpp"
#include "layout_spec.hpp"
#include "mapping.hpp"
#include "mappings.hpp"
#include "record.hpp"
#include "scalar.hpp"
#include "simd.hpp"
#include "view.hpp"
#include "view_io.hpp"
